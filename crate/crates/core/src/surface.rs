//! Nonvanishing certificates for `D ≡ K + B + H` on klt log surfaces.
//!
//! Kawamata–Viehweg vanishing kills the higher cohomology of `D`, so
//! Riemann–Roch gives `h⁰(D) = ½·D(H + B) + χ(O_X)`. When `χ(O_X) < 0` the
//! surface is birationally ruled and the bound `χ(O_S) ≥ −½·H(H + K_S)` for
//! divisors with `H·F = 1` replaces `χ`. Inputs are intersection numbers;
//! nefness and bigness are the caller's claims.
//!
//! [`RuledNS`] is the Néron–Severi lattice of a ℙ¹-bundle over a genus-`g`
//! curve, spanned by the minimal section `C₀` (`C₀² = −e`) and a fibre `F`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuledNS {
    pub g: u32,
    pub e: i64,
}

/// The class `x·C₀ + y·F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NSClass {
    pub x: Rational,
    pub y: Rational,
}

impl NSClass {
    pub fn new(x: Rational, y: Rational) -> Self {
        NSClass { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        NSClass::new(int(x), int(y))
    }

    pub fn section() -> Self {
        NSClass::from_ints(1, 0)
    }

    pub fn fibre() -> Self {
        NSClass::from_ints(0, 1)
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*C0 + {}*F", self.x, self.y)
    }
}

impl RuledNS {
    pub fn new(g: u32, e: i64) -> Self {
        RuledNS { g, e }
    }

    /// `C₀² = −e`, `C₀·F = 1`, `F² = 0`.
    pub fn intersect(&self, a: &NSClass, b: &NSClass) -> Rational {
        -int(self.e) * &a.x * &b.x + &a.x * &b.y + &b.x * &a.y
    }

    /// `K ≡ −2C₀ + (2g − 2 − e)F`.
    pub fn canonical_class(&self) -> NSClass {
        NSClass::from_ints(-2, 2 * self.g as i64 - 2 - self.e)
    }

    /// `χ(O_S) = 1 − g`.
    pub fn chi(&self) -> Rational {
        int(1 - self.g as i64)
    }
}

pub fn ns_intersect(s: &RuledNS, a: &NSClass, b: &NSClass) -> Rational {
    s.intersect(a, b)
}

pub fn canonical_class(s: &RuledNS) -> NSClass {
    s.canonical_class()
}

/// `χ + ½(H² + H·K)`; nonnegative under the ruled-surface bound, zero on ℙ¹-bundles.
pub fn lemma42_defect(h2: &Rational, hk: &Rational, chi: &Rational) -> Rational {
    chi + (h2 + hk) / int(2)
}

/// `(H², H·K)` after blowing up a point with `H = ν*H₁ − αE`, `K = ν*K₁ + E`.
pub fn blow_up_once(h2: &Rational, hk: &Rational, alpha: &Rational) -> (Rational, Rational) {
    (h2 - alpha * alpha, hk + alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    CertifiedPositive,
    /// Proved by reduction to a ℙ¹-bundle; no numeric bound is available.
    CertifiedByTheorem,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateCase {
    Case1,
    Case2a,
    Case2b,
    Case2bA1,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for CertificateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CertificateCase::Case1 => "Case1",
            CertificateCase::Case2a => "Case2a",
            CertificateCase::Case2b => "Case2b",
            CertificateCase::Case2bA1 => "Case2b_a1",
        };
        f.write_str(name)
    }
}

/// Outcome of a nonvanishing argument; `bound` is a proved lower bound on `h⁰(D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NVCertificate {
    pub verdict: Verdict,
    pub bound: Option<Rational>,
    pub case: CertificateCase,
}

impl NVCertificate {
    fn from_bound(bound: Rational, case: CertificateCase) -> Self {
        if bound.is_positive() {
            NVCertificate {
                verdict: Verdict::CertifiedPositive,
                bound: Some(bound),
                case,
            }
        } else {
            NVCertificate::inconclusive(case)
        }
    }

    fn inconclusive(case: CertificateCase) -> Self {
        NVCertificate {
            verdict: Verdict::Inconclusive,
            bound: None,
            case,
        }
    }
}

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(message()))
    }
}

/// `χ(O_X) ≥ 0`: `h⁰(D) = ½(D·H + D·B) + χ`, or `1` when `D·H = 0` (then `D ≡ 0`).
pub fn prop41_case1(dh: &Rational, db: &Rational, chi: &Rational) -> Result<NVCertificate> {
    require(!chi.is_negative(), || {
        format!("case 1 needs chi(O_X) >= 0 (got {chi})")
    })?;
    require(!dh.is_negative(), || {
        format!("D nef and H nef need D.H >= 0 (got {dh})")
    })?;
    require(!db.is_negative(), || {
        format!("D nef and B effective need D.B >= 0 (got {db})")
    })?;
    let bound = if dh.is_zero() {
        int(1)
    } else {
        (dh + db) / int(2) + chi
    };
    Ok(NVCertificate::from_bound(bound, CertificateCase::Case1))
}

/// `χ(O_X) < 0`, `a = H·F`: `h⁰(D) ≥ (a − 1)/(2a²)·H²`, positive iff `a > 1`.
pub fn prop41_case2a(h2: &Rational, a: &Rational) -> Result<NVCertificate> {
    require(h2.is_positive(), || {
        format!("H big needs H^2 > 0 (got {h2})")
    })?;
    require(a.is_positive(), || {
        format!("H big needs a = H.F > 0 (got {a})")
    })?;
    let bound = (a - int(1)) / (int(2) * a * a) * h2;
    Ok(NVCertificate::from_bound(bound, CertificateCase::Case2a))
}

/// `χ(O_X) < 0`, `H ≡ cD`, `a = D·F`:
/// `h⁰(D) ≥ (a + 1)/(2a)·((c − 1/a)·D² + D·B)`.
///
/// When the bound is not positive, `c > ½` forces `a = 1`, which is settled by
/// the ℙ¹-bundle reduction and reported as [`Verdict::CertifiedByTheorem`].
pub fn prop41_case2b(d2: &Rational, db: &Rational, a: i64, c: &Rational) -> Result<NVCertificate> {
    require(c > &Rational::new(1.into(), 2.into()), || {
        format!("case 2b needs c > 1/2 (got c = {c})")
    })?;
    require(a > 0, || format!("case 2b needs a = D.F > 0 (got {a})"))?;
    require(!d2.is_negative(), || {
        format!("D nef needs D^2 >= 0 (got {d2})")
    })?;
    require(!db.is_negative(), || {
        format!("D nef and B effective need D.B >= 0 (got {db})")
    })?;
    let a_r = int(a);
    let bound = (&a_r + int(1)) / (int(2) * &a_r) * ((c - int(1) / &a_r) * d2 + db);
    if bound.is_positive() {
        return Ok(NVCertificate::from_bound(bound, CertificateCase::Case2b));
    }
    if a == 1 {
        return Ok(NVCertificate {
            verdict: Verdict::CertifiedByTheorem,
            bound: None,
            case: CertificateCase::Case2bA1,
        });
    }
    Ok(NVCertificate::inconclusive(CertificateCase::Case2b))
}

/// Membership in `{x·C₀ + y·F : x + y ≥ 0}`, which contains the effective cone when `e = −2`.
pub fn ne_cone_member_e_minus2(cls: &NSClass) -> bool {
    !(&cls.x + &cls.y).is_negative()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step2Numerology {
    /// `D·K = e − 2b + 2(g − 1)` for `D ≡ C₀ + bF`.
    pub dk: Rational,
    /// `χ(O(D))` counted on the push-forward: `−e + b + 2(1 − g)`.
    pub chi_d: Rational,
    /// Both quantities vanish, as `h⁰(D) = 0` would require.
    pub consistent: bool,
    /// `g ≥ 2` and `e ≥ −g`.
    pub in_range: bool,
}

/// Evaluates the two linear constraints imposed by `h⁰(D) = 0` on `D ≡ C₀ + bF`.
pub fn step2_numerology(g: u32, e: i64, b: &Rational) -> Step2Numerology {
    let s = RuledNS::new(g, e);
    let d = NSClass::new(int(1), b.clone());
    let dk = s.intersect(&d, &s.canonical_class());
    let chi_d = int(-e) + b + int(2 * (1 - g as i64));
    Step2Numerology {
        consistent: dk.is_zero() && chi_d.is_zero(),
        dk,
        chi_d,
        in_range: g >= 2 && e >= -(g as i64),
    }
}
