//! Hilbert polynomials `p(t) = χ(O_X(tH))` of polarized weak log Fano pairs.
//!
//! Kawamata–Viehweg vanishing makes `p(t) = h⁰(tH)` for `t ≥ −(n − ⌊r⌋)`, so
//! `p(0) = 1` and every integer in `[−(n − ⌊r⌋), −1]` is a root. Together with
//! the two top coefficients
//!
//! ```text
//! a_n = d / n!        a_{n−1} = (ind·d + δ) / (2 (n−1)!)
//! ```
//!
//! this pins `p` down up to `⌊r⌋ − 2` plurigenera `p_j = h⁰(K + jH)`, which
//! callers supply. Each constructor writes
//!
//! ```text
//! p(t) = d/n! · (t+1)(t+2)⋯(t+m) · Q(t)
//! ```
//!
//! with a monic residual `Q` whose remaining coefficients are solved exactly.

mod coindex4;
mod verify;

pub use coindex4::{coindex4_polynomial, pk_poly, symmetric_quartic};
pub use verify::{
    check_result, verify_duality, verify_identities, verify_pk, IdentityCheck, IdentityFailure,
    IdentityReport, MIN_SAMPLES_PER_VARIABLE,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::invariants::FanoInvariants;
use crate::ratpoly::{factorial, int, to_integer, Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HilbertCase {
    Curve,
    DelPezzo,
    CaseI,
    CaseII,
    CaseIII,
}

impl HilbertCase {
    pub fn as_str(self) -> &'static str {
        match self {
            HilbertCase::Curve => "Curve",
            HilbertCase::DelPezzo => "DelPezzo",
            HilbertCase::CaseI => "CaseI",
            HilbertCase::CaseII => "CaseII",
            HilbertCase::CaseIII => "CaseIII",
        }
    }
}

impl fmt::Display for HilbertCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Invariants plus the plurigenera `p_{n−2}`, `p_{n−3}` left free by them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertModel {
    inv: FanoInvariants,
    p_n2: Option<i64>,
    p_n3: Option<i64>,
}

impl HilbertModel {
    /// `p_n2` is required iff `⌊r⌋ ≥ 3` and `n ≥ 3`; `p_n3` iff `⌊r⌋ = 4`.
    pub fn new(inv: FanoInvariants, p_n2: Option<i64>, p_n3: Option<i64>) -> Result<Self> {
        check_auxiliary(
            "p_{n-2}",
            p_n2,
            Self::needs_p_n2(&inv),
            "floor(r) >= 3 and n >= 3",
        )?;
        check_auxiliary("p_{n-3}", p_n3, Self::needs_p_n3(&inv), "floor(r) = 4")?;
        Ok(HilbertModel { inv, p_n2, p_n3 })
    }

    pub fn plain(inv: FanoInvariants) -> Result<Self> {
        Self::new(inv, None, None)
    }

    pub fn needs_p_n2(inv: &FanoInvariants) -> bool {
        inv.floor_coindex() >= 3 && inv.n() >= 3
    }

    pub fn needs_p_n3(inv: &FanoInvariants) -> bool {
        inv.floor_coindex() == 4
    }

    pub fn invariants(&self) -> &FanoInvariants {
        &self.inv
    }

    pub fn p_n2(&self) -> Option<i64> {
        self.p_n2
    }

    pub fn p_n3(&self) -> Option<i64> {
        self.p_n3
    }

    /// The same plurigenera on the `j`-dimensional member of a ladder.
    pub fn restrict_to(&self, j: i64) -> Result<Self> {
        let inv = self.inv.restrict_to(j)?;
        let p_n2 = self.p_n2.filter(|_| Self::needs_p_n2(&inv));
        let p_n3 = self.p_n3.filter(|_| Self::needs_p_n3(&inv));
        Self::new(inv, p_n2, p_n3)
    }
}

fn check_auxiliary(
    name: &'static str,
    value: Option<i64>,
    required: bool,
    rule: &str,
) -> Result<()> {
    match (value, required) {
        (Some(v), _) if v < 0 => Err(Error::NegativePlurigenus { name, value: v }),
        (None, true) => Err(Error::PreconditionViolated(format!(
            "{name} must be given when {rule}"
        ))),
        (Some(_), false) => Err(Error::PreconditionViolated(format!(
            "{name} is only an input when {rule}"
        ))),
        _ => Ok(()),
    }
}

/// `p = d/n! · (t+1)⋯(t+linear_factors) · residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub linear_factors: u32,
    pub residual: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertResult {
    pub p: Poly,
    pub h0: Rational,
    pub case: HilbertCase,
    pub factorization: Option<Factorization>,
}

impl HilbertResult {
    /// `dim |H| = h⁰(H) − 1`.
    pub fn linear_system_dim(&self) -> Rational {
        &self.h0 - int(1)
    }
}

/// `{−1, …, −(n − ⌊r⌋)}`.
pub fn forced_roots(inv: &FanoInvariants) -> Vec<i64> {
    let count = inv.n() as i64 - inv.floor_coindex();
    (1..=count.max(0)).map(|k| -k).collect()
}

/// Dispatches on `n` and `⌊r⌋`.
pub fn build(model: &HilbertModel) -> Result<HilbertResult> {
    let inv = model.invariants();
    if inv.n() <= 2 {
        return h0_lowdim(inv);
    }
    match inv.floor_coindex() {
        ..=2 => build_case_i(model),
        3 => build_case_ii(model),
        4 => build_case_iii(model),
        _ => Err(Error::PreconditionViolated(format!(
            "no closed form for coindex r = {} (requires r < 5)",
            inv.coindex()
        ))),
    }
}

/// Curves and log del Pezzo surfaces.
pub fn h0_lowdim(inv: &FanoInvariants) -> Result<HilbertResult> {
    let d = inv.d().clone();
    let (p, case) = match inv.n() {
        1 => {
            if inv.anticanonical_degree() != int(2) {
                return Err(Error::PreconditionViolated(format!(
                    "a log Fano curve is P^1, so ind*d + delta = 2 (got {})",
                    inv.anticanonical_degree()
                )));
            }
            (Poly::from_coeffs(vec![int(1), d]), HilbertCase::Curve)
        }
        2 => {
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let linear = inv.anticanonical_degree() * &half;
            (
                Poly::from_coeffs(vec![int(1), linear, d * half]),
                HilbertCase::DelPezzo,
            )
        }
        n => {
            return Err(Error::PreconditionViolated(format!(
                "low-dimensional formula requires n <= 2 (got n = {n})"
            )))
        }
    };
    certify_forced_roots(&p, inv)?;
    let h0 = match case {
        HilbertCase::Curve => inv.d() + int(1),
        _ => inv.coindex4_defect() / int(2) + int(1),
    };
    Ok(HilbertResult {
        p,
        h0,
        case,
        factorization: None,
    })
}

pub fn build_case_i(model: &HilbertModel) -> Result<HilbertResult> {
    let inv = model.invariants();
    require_case(inv, 3, ..=2, "case i requires n >= 3 and floor(r) <= 2")?;
    let (n, d) = (int(inv.n() as i64), inv.d());
    let a = case_i_a(inv);
    let residual = Poly::from_coeffs(vec![&n * (&n - int(1)) / d, a, int(1)]);
    finish(model, HilbertCase::CaseI, residual)
}

pub fn build_case_ii(model: &HilbertModel) -> Result<HilbertResult> {
    let inv = model.invariants();
    require_case(inv, 3, 3..=3, "case ii requires n >= 3 and floor(r) = 3")?;
    let p_n2 = model.p_n2.expect("validated by HilbertModel::new");
    let n = int(inv.n() as i64);
    let a = case_ii_a(inv);
    let b = case_ii_b(inv, &a, p_n2);
    let constant = &n * (&n - int(1)) * (&n - int(2)) / inv.d();
    let residual = Poly::from_coeffs(vec![constant, b, a, int(1)]);
    finish(model, HilbertCase::CaseII, residual)
}

pub fn build_case_iii(model: &HilbertModel) -> Result<HilbertResult> {
    let inv = model.invariants();
    require_case(inv, 4, 4..=4, "case iii requires n >= 4 and floor(r) = 4")?;
    let p_n2 = model.p_n2.expect("validated by HilbertModel::new");
    let p_n3 = model.p_n3.expect("validated by HilbertModel::new");
    let n = int(inv.n() as i64);
    let a = case_iii_a(inv);
    let (b, c) = case_iii_bc(inv, &a, p_n2, p_n3);
    let constant = &n * (&n - int(1)) * (&n - int(2)) * (&n - int(3)) / inv.d();
    let residual = Poly::from_coeffs(vec![constant, c, b, a, int(1)]);
    finish(model, HilbertCase::CaseIII, residual)
}

fn require_case(
    inv: &FanoInvariants,
    min_n: u32,
    floors: impl std::ops::RangeBounds<i64>,
    message: &str,
) -> Result<()> {
    if inv.n() < min_n || !floors.contains(&inv.floor_coindex()) {
        return Err(Error::PreconditionViolated(format!(
            "{message} (got n = {}, r = {})",
            inv.n(),
            inv.coindex()
        )));
    }
    Ok(())
}

fn finish(model: &HilbertModel, case: HilbertCase, residual: Poly) -> Result<HilbertResult> {
    let inv = model.invariants();
    let linear_factors = inv.n() - residual.degree().expect("monic residual") as u32;
    let p = assemble(inv.n(), inv.d(), linear_factors, &residual);
    certify_forced_roots(&p, inv)?;
    Ok(HilbertResult {
        p,
        h0: closed_form_h0(inv, case, model.p_n2, model.p_n3),
        case,
        factorization: Some(Factorization {
            linear_factors,
            residual,
        }),
    })
}

/// `d/n! · (t+1)⋯(t+m) · residual`.
pub(crate) fn assemble(n: u32, d: &Rational, linear_factors: u32, residual: &Poly) -> Poly {
    let leading = d / Rational::from_integer(factorial(n));
    let roots: Vec<Rational> = (1..=linear_factors as i64).map(|k| int(-k)).collect();
    &Poly::from_roots(leading, &roots) * residual
}

fn certify_forced_roots(p: &Poly, inv: &FanoInvariants) -> Result<()> {
    for root in forced_roots(inv) {
        let value = p.eval_int(root);
        if !value.is_zero() {
            return Err(Error::ForcedRootViolated {
                root,
                value: Box::new(value),
            });
        }
    }
    Ok(())
}

/// The case's closed-form `h⁰(H)`; missing plurigenera count as zero.
pub fn closed_form_h0(
    inv: &FanoInvariants,
    case: HilbertCase,
    p_n2: Option<i64>,
    p_n3: Option<i64>,
) -> Rational {
    let n = inv.n() as i64;
    let shared = inv.coindex4_defect() / int(2);
    let p_n2 = int(p_n2.unwrap_or(0));
    let p_n3 = int(p_n3.unwrap_or(0));
    match case {
        HilbertCase::Curve => inv.d() + int(1),
        HilbertCase::DelPezzo => shared + int(1),
        HilbertCase::CaseI => int(n - 1) + shared,
        HilbertCase::CaseII => int(n - 1) + p_n2 + shared,
        HilbertCase::CaseIII => (int(1) - p_n3) * int(n - 1) + p_n2 + shared,
    }
}

/// `a = −1 + n(d(4−r) + δ) / (2d)`.
pub(crate) fn case_i_a(inv: &FanoInvariants) -> Rational {
    let n = int(inv.n() as i64);
    int(-1) + n * inv.coindex4_defect() / (int(2) * inv.d())
}

/// `a = (6−r)n/2 − 3 + δn/(2d)`.
pub(crate) fn case_ii_a(inv: &FanoInvariants) -> Rational {
    let n = int(inv.n() as i64);
    (int(6) - inv.coindex()) * &n / int(2) - int(3) + inv.delta() * &n / (int(2) * inv.d())
}

/// Solves `p_{n−2} = −1 + d/(n(n−1)) · ((n−2)² − a(n−2) + b)` for `b`.
pub(crate) fn case_ii_b(inv: &FanoInvariants, a: &Rational, p_n2: i64) -> Rational {
    let n = int(inv.n() as i64);
    let m = &n - int(2);
    (int(p_n2) + int(1)) * &n * (&n - int(1)) / inv.d() - &m * &m + a * &m
}

/// `a = −6 + n(d(8−r) + δ) / (2d)`.
pub(crate) fn case_iii_a(inv: &FanoInvariants) -> Rational {
    let n = int(inv.n() as i64);
    let top = inv.d() * (int(8) - inv.coindex()) + inv.delta();
    int(-6) + n * top / (int(2) * inv.d())
}

/// Solves the linear system given by `p_{n−3}` and `p_{n−2}` for `(b, c)`:
///
/// ```text
/// (p_{n−3} − 1)·n(n−1)(n−2)/d   = (n−3)³ − a(n−3)² + b(n−3) − c
/// (p_{n−2} − (n−3))·n(n−1)/d    = (n−2)³ − a(n−2)² + b(n−2) − c
/// ```
pub(crate) fn case_iii_bc(
    inv: &FanoInvariants,
    a: &Rational,
    p_n2: i64,
    p_n3: i64,
) -> (Rational, Rational) {
    let n = int(inv.n() as i64);
    let d = inv.d();
    let (u, v) = (&n - int(3), &n - int(2));
    let lhs3 = (int(p_n3) - int(1)) * &n * (&n - int(1)) * &v / d;
    let lhs2 = (int(p_n2) - &u) * &n * (&n - int(1)) / d;
    let cube = |x: &Rational| x * x * x;
    let b = &lhs2 - &lhs3 - (cube(&v) - cube(&u)) + a * (&v * &v - &u * &u);
    let c = cube(&u) - a * &u * &u + &b * &u - lhs3;
    (b, c)
}

fn plurigenus_of(p: &Poly, n: u32, j: i64) -> Rational {
    let value = p.eval_int(-j);
    if n.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// `p_j = (−1)ⁿ p(−j) = h⁰(K + jH)`.
pub fn plurigenus(result: &HilbertResult, inv: &FanoInvariants, j: u32) -> Rational {
    plurigenus_of(&result.p, inv.n(), j as i64)
}

/// Serre duality for `B = 0`: `p(t) ≡ (−1)ⁿ p(−t − ind)`, compared coefficientwise.
pub fn duality_check(result: &HilbertResult, inv: &FanoInvariants) -> Result<bool> {
    if !inv.delta().is_zero() {
        return Err(Error::PreconditionViolated(format!(
            "duality needs a trivial boundary, delta = 0 (got {})",
            inv.delta()
        )));
    }
    let index = to_integer(inv.index()).ok_or_else(|| {
        Error::PreconditionViolated(format!(
            "duality needs an integral index (got {})",
            inv.index()
        ))
    })?;
    let reflected = result.p.compose_affine(&int(-1), &int(-index));
    let reflected = if inv.n().is_multiple_of(2) {
        reflected
    } else {
        -&reflected
    };
    Ok(result.p == reflected)
}

/// Positivity of `p(1)` from vanishing at `−1, …, −(dim−1)` and `p(0) = 1`.
///
/// Returns `false` when those zeros or `p(0) = 1` are missing (in particular
/// for `p ≡ 0`), or when `deg p > dim`. Otherwise the verdict is the exact
/// sign of `p(1)`.
pub fn nonvanishing_by_forced_roots(p: &Poly, dim: u32) -> bool {
    if p.degree().is_none_or(|deg| deg > dim as usize) {
        return false;
    }
    if !p.eval_int(0).is_one() {
        return false;
    }
    if (1..dim as i64).any(|k| !p.eval_int(-k).is_zero()) {
        return false;
    }
    p.eval_int(1) > Rational::zero()
}
