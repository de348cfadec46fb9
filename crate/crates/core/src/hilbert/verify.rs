//! Certification suites for the Hilbert constructors.
//!
//! Every identity checked here is, after clearing the denominator `d`, a
//! polynomial of degree at most 3 in each of the sampled variables
//! `(d, δ, r, p_{n−2}, p_{n−3})`. Evaluating it exactly on a product grid
//! with at least four distinct values per variable therefore proves it.

use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::invariants::FanoInvariants;
use crate::ratpoly::{factorial, int, ratio, Poly, Rational};

use super::{
    build, closed_form_h0, duality_check, forced_roots, pk_poly, plurigenus, HilbertCase,
    HilbertModel, HilbertResult,
};

pub const MIN_SAMPLES_PER_VARIABLE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityCheck {
    Construction,
    LeadingCoefficient,
    SubleadingCoefficient,
    SolvedA,
    ValueAtZero,
    ForcedRoots,
    ClosedFormH0,
    PlurigenusRoundTrip,
    EliminationIdentity,
    EliminatedSum,
    Duality,
    DualityNegativeControl,
    PkValue,
    PkSymmetry,
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub subject: String,
    pub check: IdentityCheck,
    pub detail: String,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.subject, self.check, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub models: usize,
    pub checks: usize,
    pub failures: Vec<IdentityFailure>,
    /// `(n, case)` pairs with no valid input, e.g. case iii needs `n ≥ 4`.
    pub skipped: Vec<(u32, HilbertCase)>,
}

impl IdentityReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: IdentityReport) {
        self.models += other.models;
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.skipped.extend(other.skipped);
    }

    fn expect(
        &mut self,
        ok: bool,
        subject: &str,
        check: IdentityCheck,
        detail: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(IdentityFailure {
                subject: subject.to_string(),
                check,
                detail: detail(),
            });
        }
    }
}

fn describe(model: &HilbertModel) -> String {
    let mut text = model.invariants().to_string();
    if let Some(v) = model.p_n2() {
        text.push_str(&format!(" p_n2={v}"));
    }
    if let Some(v) = model.p_n3() {
        text.push_str(&format!(" p_n3={v}"));
    }
    text
}

/// Checks one constructed polynomial against every identity its case promises.
pub fn check_result(model: &HilbertModel, result: &HilbertResult) -> IdentityReport {
    let inv = model.invariants();
    let subject = format!("{} {}", result.case, describe(model));
    let n = inv.n();
    let p = &result.p;
    let mut report = IdentityReport {
        models: 1,
        ..IdentityReport::default()
    };

    let leading = inv.d() / Rational::from_integer(factorial(n));
    report.expect(
        p.degree() == Some(n as usize) && p.coeff(n as usize) == leading,
        &subject,
        IdentityCheck::LeadingCoefficient,
        || format!("expected d/n! = {leading}, polynomial is {p}"),
    );

    let subleading =
        inv.anticanonical_degree() / (int(2) * Rational::from_integer(factorial(n - 1)));
    let actual = p.coeff(n as usize - 1);
    report.expect(
        actual == subleading,
        &subject,
        IdentityCheck::SubleadingCoefficient,
        || format!("a_(n-1) = {actual}, expected (ind*d+delta)/(2(n-1)!) = {subleading}"),
    );

    if let Some(fact) = &result.factorization {
        // (t+1)⋯(t+m)·Q contributes a + m(m+1)/2 to t^{n−1}.
        let k = fact.residual.degree().unwrap_or(0);
        let a = if k == 0 {
            Rational::zero()
        } else {
            fact.residual.coeff(k - 1)
        };
        let m = fact.linear_factors as i64;
        let implied = &leading * (&a + ratio(m * (m + 1), 2));
        report.expect(
            implied == subleading,
            &subject,
            IdentityCheck::SolvedA,
            || format!("solved a = {a} gives a_(n-1) = {implied}, expected {subleading}"),
        );
    }

    let at_zero = p.eval_int(0);
    report.expect(
        at_zero.is_one(),
        &subject,
        IdentityCheck::ValueAtZero,
        || format!("p(0) = {at_zero}"),
    );

    let missed: Vec<i64> = forced_roots(inv)
        .into_iter()
        .filter(|&t| !p.eval_int(t).is_zero())
        .collect();
    report.expect(
        missed.is_empty(),
        &subject,
        IdentityCheck::ForcedRoots,
        || format!("p does not vanish at {missed:?}"),
    );

    let closed = closed_form_h0(inv, result.case, model.p_n2(), model.p_n3());
    let at_one = p.eval_int(1);
    report.expect(
        at_one == closed && result.h0 == closed,
        &subject,
        IdentityCheck::ClosedFormH0,
        || {
            format!(
                "p(1) = {at_one}, reported h0 = {}, closed form = {closed}",
                result.h0
            )
        },
    );

    let nn = n as i64;
    let round_trips: Vec<(u32, i64)> = match result.case {
        HilbertCase::CaseII => vec![(n - 2, model.p_n2().unwrap_or(0))],
        HilbertCase::CaseIII => vec![
            (n - 2, model.p_n2().unwrap_or(0)),
            (n - 3, model.p_n3().unwrap_or(0)),
        ],
        _ => Vec::new(),
    };
    for (j, expected) in round_trips {
        let got = plurigenus(result, inv, j);
        report.expect(
            got == int(expected),
            &subject,
            IdentityCheck::PlurigenusRoundTrip,
            || format!("p_{j} = {got}, input was {expected}"),
        );
    }

    if result.case == HilbertCase::CaseIII {
        if let Some(fact) = &result.factorization {
            let (a, b, c) = (
                fact.residual.coeff(3),
                fact.residual.coeff(2),
                fact.residual.coeff(1),
            );
            let (u, v, w) = (int(nn - 3), int(nn - 2), int(nn - 1));
            let lhs = &v * (&b * &v - &c) - &w * (&b * &u - &c);
            let sum = &b + &c;
            report.expect(
                lhs == sum,
                &subject,
                IdentityCheck::EliminationIdentity,
                || format!("(n-2)[b(n-2)-c] - (n-1)[b(n-3)-c] = {lhs}, b+c = {sum}"),
            );

            let nf = int(nn);
            let cube = |x: &Rational| x * x * x;
            let p_n2 = int(model.p_n2().unwrap_or(0));
            let p_n3 = int(model.p_n3().unwrap_or(0));
            let eliminated = &w * cube(&u)
                - cube(&v) * &v
                - &a * (&w * &u * &u - cube(&v))
                - &nf * &w * &v / inv.d() * (&w * (p_n3 - int(1)) - p_n2 + &u);
            report.expect(
                eliminated == sum,
                &subject,
                IdentityCheck::EliminatedSum,
                || format!("eliminated b+c = {eliminated}, solved b+c = {sum}"),
            );
        }
    }

    report
}

fn sample_d(k: usize) -> Rational {
    ratio(3 * k as i64 + 2, 2)
}

fn sample_delta(k: usize) -> Rational {
    ratio(k as i64, 3)
}

fn sample_r(floor: i64, k: usize, samples: usize) -> Rational {
    int(floor) + ratio(k as i64, samples as i64)
}

fn case_floor(case: HilbertCase) -> i64 {
    match case {
        HilbertCase::CaseII => 3,
        HilbertCase::CaseIII => 4,
        _ => 2,
    }
}

fn grid_models(n: u32, case: HilbertCase, samples: usize) -> Result<Vec<HilbertModel>> {
    let floor = case_floor(case);
    let aux_n2 = match case {
        HilbertCase::CaseI => vec![None],
        _ => (0..samples as i64).map(Some).collect(),
    };
    let aux_n3 = match case {
        HilbertCase::CaseIII => (0..samples as i64).map(Some).collect(),
        _ => vec![None],
    };
    let mut models = Vec::new();
    for kd in 0..samples {
        for kdelta in 0..samples {
            for kr in 0..samples {
                let inv = FanoInvariants::with_coindex(
                    n as i64,
                    sample_d(kd),
                    sample_delta(kdelta),
                    sample_r(floor, kr, samples),
                )?;
                for p_n2 in &aux_n2 {
                    for p_n3 in &aux_n3 {
                        models.push(HilbertModel::new(inv.clone(), *p_n2, *p_n3)?);
                    }
                }
            }
        }
    }
    Ok(models)
}

/// Models with `⌊r⌋ ≤ 1`, where the extra forced roots constrain `(d, δ)`.
fn anchor_models(n: u32) -> Vec<HilbertModel> {
    let anchors = [
        (int(1), int(0), int(0)),
        (int(2), int(0), int(1)),
        (int(1), ratio(1, 2), ratio(1, 2)),
        (int(1), int(1), int(1)),
    ];
    anchors
        .into_iter()
        .filter_map(|(d, delta, r)| FanoInvariants::with_coindex(n as i64, d, delta, r).ok())
        .filter_map(|inv| HilbertModel::plain(inv).ok())
        .collect()
}

fn run_model(model: &HilbertModel, report: &mut IdentityReport) {
    match build(model) {
        Ok(result) => report.merge(check_result(model, &result)),
        Err(err) => {
            report.models += 1;
            report.expect(false, &describe(model), IdentityCheck::Construction, || {
                err.to_string()
            });
        }
    }
}

/// Certifies cases i, ii, iii for every `n` in `n_range` on exact sample grids.
pub fn verify_identities(n_range: RangeInclusive<u32>, samples: usize) -> Result<IdentityReport> {
    if *n_range.start() < 3 || *n_range.end() > 12 {
        return Err(Error::PreconditionViolated(format!(
            "identity verification needs 3 <= n <= 12 (got {}..={})",
            n_range.start(),
            n_range.end()
        )));
    }
    if samples < MIN_SAMPLES_PER_VARIABLE {
        return Err(Error::PreconditionViolated(format!(
            "identity verification needs samples >= {MIN_SAMPLES_PER_VARIABLE} per variable (got {samples})"
        )));
    }
    let mut report = IdentityReport::default();
    for n in n_range {
        for case in [
            HilbertCase::CaseI,
            HilbertCase::CaseII,
            HilbertCase::CaseIII,
        ] {
            // r < n + 1 rules out ⌊r⌋ = 4 on threefolds.
            if case_floor(case) > n as i64 {
                report.skipped.push((n, case));
                continue;
            }
            for model in grid_models(n, case, samples)? {
                run_model(&model, &mut report);
            }
        }
        for model in anchor_models(n) {
            run_model(&model, &mut report);
        }
    }
    Ok(report)
}

/// Serre duality on trivial-boundary models, with negative controls that must fail it.
pub fn verify_duality(n_max: u32) -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    let mut check =
        |inv: FanoInvariants, p_n2: Option<i64>, p_n3: Option<i64>, expected: bool| -> Result<()> {
            let model = HilbertModel::new(inv, p_n2, p_n3)?;
            let result = build(&model)?;
            let holds = duality_check(&result, model.invariants())?;
            report.models += 1;
            let check = if expected {
                IdentityCheck::Duality
            } else {
                IdentityCheck::DualityNegativeControl
            };
            report.expect(holds == expected, &describe(&model), check, || {
                format!("duality returned {holds}, expected {expected}")
            });
            Ok(())
        };
    for n in 1..=n_max as i64 {
        check(
            FanoInvariants::with_coindex(n, int(1), int(0), int(0))?,
            None,
            None,
            true,
        )?;
        if n >= 2 {
            check(
                FanoInvariants::with_coindex(n, int(2), int(0), int(1))?,
                None,
                None,
                true,
            )?;
            for d in 1..=6 {
                check(
                    FanoInvariants::with_coindex(n, int(d), int(0), int(2))?,
                    None,
                    None,
                    true,
                )?;
            }
        }
        if n >= 3 {
            for d in [2, 8, 22] {
                let inv = FanoInvariants::with_coindex(n, int(d), int(0), int(3))?;
                check(inv.clone(), Some(1), None, true)?;
                check(inv, Some(2), None, false)?;
            }
        }
        if n >= 4 {
            for d in [1, 24, 120] {
                let inv = FanoInvariants::with_coindex(n, int(d), int(0), int(4))?;
                for p_n2 in 0..=3 {
                    check(inv.clone(), Some(p_n2), Some(1), true)?;
                    check(inv.clone(), Some(p_n2), Some(0), false)?;
                }
            }
        }
    }
    Ok(report)
}

/// `p_{−1}(1) = 0`, `p_0(1) = 1`, `p_k(1) = k + 1` and `p_k(t) = p_k(−t−1)`.
pub fn verify_pk(k_max: i64, degrees: &[i64]) -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    for &d in degrees {
        for k in -1..=k_max {
            let p = pk_poly(&int(d), k)?;
            let subject = format!("p_{k} with d={d}");
            report.models += 1;
            let at_one = p.eval_int(1);
            report.expect(
                at_one == int(k + 1),
                &subject,
                IdentityCheck::PkValue,
                || format!("p_k(1) = {at_one}, expected {}", k + 1),
            );
            report.expect(
                pk_symmetric(&p),
                &subject,
                IdentityCheck::PkSymmetry,
                || format!("{p} is not invariant under t -> -t-1"),
            );
        }
    }
    Ok(report)
}

pub(crate) fn pk_symmetric(p: &Poly) -> bool {
    p.compose_affine(&int(-1), &int(-1)) == *p
}
