//! Coindex-4 polynomials with trivial boundary and `−K ∼ (n−3)H`.

use crate::error::{Error, Result};
use crate::ratpoly::{int, ratio, Poly, Rational};

use super::assemble;

/// The residual quartic forced by `p(t) = p(−t−n+3)`:
///
/// ```text
/// t⁴ + 2(n−3)t³ + αt² + [(n−3)α − (n−3)³]t + n(n−1)(n−2)(n−3)/d
/// ```
pub fn symmetric_quartic(n: u32, d: &Rational, alpha: &Rational) -> Result<Poly> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!(
            "the symmetric residual exists only for even n >= 4 (got n = {n})"
        )));
    }
    if d < &int(1) {
        return Err(Error::InvalidDegree(d.clone()));
    }
    let n = int(n as i64);
    let m = &n - int(3);
    let linear = alpha * &m - &m * &m * &m;
    let constant = &n * (&n - int(1)) * (&n - int(2)) * &m / d;
    Ok(Poly::from_coeffs(vec![
        constant,
        linear,
        alpha.clone(),
        int(2) * m,
        int(1),
    ]))
}

/// `d/n! · (t+1)⋯(t+n−4) · residual` for a degree-4 residual.
pub fn coindex4_polynomial(n: u32, d: &Rational, residual: &Poly) -> Poly {
    assemble(n, d, n.saturating_sub(4), residual)
}

/// `p_k(t) = d/4!·t(t+1)(t−1)(t+2) + (k/2)·t(t+1) + 1`, the 4-fold family.
pub fn pk_poly(d: &Rational, k: i64) -> Result<Poly> {
    if d < &int(1) {
        return Err(Error::InvalidDegree(d.clone()));
    }
    if k < -1 {
        return Err(Error::PreconditionViolated(format!(
            "the 4-fold family needs k >= -1 (got k = {k})"
        )));
    }
    let quartic = Poly::from_roots(d / int(24), &[int(0), int(-1), int(1), int(-2)]);
    let quadratic = Poly::from_roots(ratio(k, 2), &[int(0), int(-1)]);
    Ok(&(&quartic + &quadratic) + &Poly::constant(int(1)))
}
