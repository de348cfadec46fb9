//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use fano_ladder::catalog::{bundled_catalog, crosscheck};
use fano_ladder::hilbert::{
    build, check_result, pk_poly, verify_identities, verify_pk, HilbertCase, HilbertResult,
};
use fano_ladder::invariants::MemberClass;
use fano_ladder::ladder::build_ladder;
use fano_ladder::ratpoly::{binomial_hilbert, floor_i64, int, ratio, to_integer};
use fano_ladder::surface::{
    lemma42_defect, prop41_case1, prop41_case2a, prop41_case2b, step2_numerology, CertificateCase,
    NSClass, RuledNS, Verdict,
};
use fano_ladder::{FanoInvariants, HilbertModel, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn choose(m: i64, k: i64) -> BigInt {
    if k < 0 || m < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    acc
}

/// `p` has degree `deg` and matches `values(t)` at `t = 0..=deg`.
fn matches_values(p: &Poly, deg: usize, values: impl Fn(i64) -> BigInt) -> bool {
    p.degree() == Some(deg)
        && (0..=deg as i64).all(|t| p.eval_int(t) == Rational::from_integer(values(t)))
}

fn model(
    n: i64,
    d: Rational,
    delta: Rational,
    r: Rational,
    p_n2: Option<i64>,
    p_n3: Option<i64>,
) -> HilbertModel {
    HilbertModel::new(
        FanoInvariants::with_coindex(n, d, delta, r).unwrap(),
        p_n2,
        p_n3,
    )
    .unwrap()
}

fn corruptions(p: &Poly) -> Vec<Poly> {
    (0..p.coeffs().len())
        .map(|k| {
            let mut c = p.coeffs().to_vec();
            c[k] += int(1);
            Poly::from_coeffs(c)
        })
        .collect()
}

fn projective_space(n: i64) -> Poly {
    build(&model(n, int(1), int(0), int(0), None, None))
        .unwrap()
        .p
}

fn quadric(n: i64) -> Poly {
    build(&model(n, int(2), int(0), int(1), None, None))
        .unwrap()
        .p
}

fn projective_oracle(p: &Poly, n: i64) -> bool {
    p == &binomial_hilbert(n as u32, 0) && matches_values(p, n as usize, |t| choose(t + n, n))
}

fn quadric_oracle(p: &Poly, n: i64) -> bool {
    let q = &binomial_hilbert(n as u32 + 1, 0) - &binomial_hilbert(n as u32 + 1, -2);
    p == &q
        && matches_values(p, n as usize, |t| {
            choose(t + n + 1, n + 1) - choose(t + n - 1, n + 1)
        })
}

fn criterion_1() -> Check {
    for n in 1..=8 {
        let result =
            build(&model(n, int(1), int(0), int(0), None, None)).map_err(|e| e.to_string())?;
        ensure!(
            projective_oracle(&result.p, n),
            "P^{n}: {} differs from the oracle",
            result.p
        );
        ensure!(result.h0 == int(n + 1), "P^{n}: h0 = {}", result.h0);
    }
    Ok(())
}

fn criterion_2() -> Check {
    for n in 2..=7 {
        let result =
            build(&model(n, int(2), int(0), int(1), None, None)).map_err(|e| e.to_string())?;
        ensure!(
            quadric_oracle(&result.p, n),
            "Q^{n}: {} differs from the oracle",
            result.p
        );
        ensure!(result.h0 == int(n + 2), "Q^{n}: h0 = {}", result.h0);
    }
    Ok(())
}

fn factorial(n: i64) -> Rational {
    (1..=n).fold(int(1), |acc, k| acc * int(k))
}

/// The closed forms for `h⁰(H)`, written out independently of the library.
fn expected_h0(m: &HilbertModel) -> Rational {
    let inv = m.invariants();
    let n = int(inv.n() as i64);
    let x = (inv.d() * (int(4) - inv.coindex()) + inv.delta()) / int(2);
    let p2 = int(m.p_n2().unwrap_or(0));
    let p3 = int(m.p_n3().unwrap_or(0));
    match floor_i64(inv.coindex()) {
        0..=2 => &n - int(1) + x,
        3 => &n - int(1) + p2 + x,
        _ => (int(1) - p3) * (&n - int(1)) + p2 + x,
    }
}

fn identity_oracle(m: &HilbertModel, result: &HilbertResult) -> Check {
    let inv = m.invariants();
    let n = inv.n() as i64;
    let p = &result.p;
    ensure!(
        p.degree() == Some(n as usize),
        "{inv}: degree {:?}",
        p.degree()
    );
    ensure!(
        p.coeff(n as usize) == inv.d() / factorial(n),
        "{inv}: leading coefficient"
    );
    let sub = (inv.index() * inv.d() + inv.delta()) / (int(2) * factorial(n - 1));
    ensure!(
        p.coeff(n as usize - 1) == sub,
        "{inv}: a_(n-1) = {}, expected {sub}",
        p.coeff(n as usize - 1)
    );
    ensure!(p.eval_int(0) == int(1), "{inv}: p(0) = {}", p.eval_int(0));
    let h0 = expected_h0(m);
    ensure!(
        p.eval_int(1) == h0,
        "{inv}: p(1) = {}, expected {h0}",
        p.eval_int(1)
    );
    ensure!(
        result.h0 == h0,
        "{inv}: reported h0 = {}, expected {h0}",
        result.h0
    );
    Ok(())
}

fn identity_models(n: i64) -> Vec<HilbertModel> {
    let degrees = [int(1), ratio(3, 2), int(5), int(12)];
    let deltas = [int(0), ratio(1, 3), int(2)];
    let mut out = Vec::new();
    for d in &degrees {
        for delta in &deltas {
            for r in [int(2), ratio(5, 2), ratio(11, 4)] {
                out.push(model(n, d.clone(), delta.clone(), r, None, None));
            }
            for r in [int(3), ratio(7, 2)] {
                for p2 in [0, 1, 3] {
                    out.push(model(
                        n,
                        d.clone(),
                        delta.clone(),
                        r.clone(),
                        Some(p2),
                        None,
                    ));
                }
            }
            if n >= 4 {
                for r in [int(4), ratio(13, 3)] {
                    for p2 in [0, 2] {
                        for p3 in [0, 1, 2] {
                            out.push(model(
                                n,
                                d.clone(),
                                delta.clone(),
                                r.clone(),
                                Some(p2),
                                Some(p3),
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

fn criterion_3() -> Check {
    let report = verify_identities(3..=10, 4).map_err(|e| e.to_string())?;
    ensure!(
        report.is_clean(),
        "{} identity failures, first: {}",
        report.failures.len(),
        report.failures[0]
    );
    ensure!(
        report.skipped == vec![(3, HilbertCase::CaseIII)],
        "unexpected skipped cases {:?}",
        report.skipped
    );
    for n in 3..=10 {
        let mut seen = Vec::new();
        for m in identity_models(n) {
            let result = build(&m).map_err(|e| e.to_string())?;
            identity_oracle(&m, &result)?;
            if !seen.contains(&result.case) {
                seen.push(result.case);
            }
        }
        let want = if n >= 4 { 3 } else { 2 };
        ensure!(seen.len() == want, "n={n}: cases covered {seen:?}");
    }
    Ok(())
}

fn criterion_4() -> Check {
    ensure!(
        pk_poly(&int(24), -1).unwrap().eval_int(1) == int(0),
        "p_-1(1) != 0"
    );
    ensure!(
        pk_poly(&int(24), 0).unwrap().eval_int(1) == int(1),
        "p_0(1) != 1"
    );
    for d in [1, 24, 120] {
        for k in -1..=50 {
            let p = pk_poly(&int(d), k).map_err(|e| e.to_string())?;
            ensure!(
                p.eval_int(1) == int(k + 1),
                "d={d} k={k}: p_k(1) = {}",
                p.eval_int(1)
            );
            ensure!(
                p.compose_affine(&int(-1), &int(-1)) == p,
                "d={d} k={k}: not symmetric"
            );
        }
    }
    let report = verify_pk(50, &[1, 24, 120]).map_err(|e| e.to_string())?;
    ensure!(report.is_clean(), "pk suite: {:?}", report.failures);
    Ok(())
}

fn criterion_5() -> Check {
    for g in 0..=5u32 {
        for e in -(g as i64)..=5 {
            let s = RuledNS::new(g, e);
            for b in -3..=3 {
                let h = NSClass::from_ints(1, b);
                let h2 = s.intersect(&h, &h);
                let hk = s.intersect(&h, &s.canonical_class());
                let defect = lemma42_defect(&h2, &hk, &s.chi());
                ensure!(defect.is_zero(), "g={g} e={e} b={b}: defect {defect}");
            }
        }
    }

    let positive =
        |c: &fano_ladder::surface::NVCertificate, bound: Rational, case: CertificateCase| {
            c.verdict == Verdict::CertifiedPositive && c.bound == Some(bound) && c.case == case
        };
    let c = prop41_case1(&int(4), &int(0), &int(1)).map_err(|e| e.to_string())?;
    ensure!(
        positive(&c, int(3), CertificateCase::Case1),
        "case1 (4,0,1): {c:?}"
    );
    let c = prop41_case1(&int(0), &int(0), &int(0)).map_err(|e| e.to_string())?;
    ensure!(
        positive(&c, int(1), CertificateCase::Case1),
        "case1 DH=0: {c:?}"
    );
    let c = prop41_case1(&int(1), &int(1), &int(0)).map_err(|e| e.to_string())?;
    ensure!(
        positive(&c, int(1), CertificateCase::Case1),
        "case1 (1,1,0): {c:?}"
    );
    ensure!(
        prop41_case1(&int(1), &int(1), &int(-1)).is_err(),
        "case1 accepted chi < 0"
    );
    let c = prop41_case2a(&int(8), &int(2)).map_err(|e| e.to_string())?;
    ensure!(
        positive(&c, int(1), CertificateCase::Case2a),
        "case2a (8,2): {c:?}"
    );
    let c = prop41_case2a(&int(18), &int(3)).map_err(|e| e.to_string())?;
    ensure!(
        positive(&c, int(2), CertificateCase::Case2a),
        "case2a (18,3): {c:?}"
    );
    let c = prop41_case2a(&int(8), &int(1)).map_err(|e| e.to_string())?;
    ensure!(c.verdict == Verdict::Inconclusive, "case2a a=1: {c:?}");
    let c = prop41_case2b(&int(4), &int(0), 2, &int(1)).map_err(|e| e.to_string())?;
    ensure!(
        positive(&c, ratio(3, 2), CertificateCase::Case2b),
        "case2b (4,0,2,1): {c:?}"
    );
    let c = prop41_case2b(&int(2), &int(0), 1, &int(1)).map_err(|e| e.to_string())?;
    ensure!(
        c.verdict == Verdict::CertifiedByTheorem
            && c.case == CertificateCase::Case2bA1
            && c.bound.is_none(),
        "case2b a=1: {c:?}"
    );
    ensure!(
        prop41_case2b(&int(2), &int(0), 3, &ratio(2, 5)).is_err(),
        "case2b accepted c = 2/5"
    );

    let mut consistent = Vec::new();
    for g in 0..=6u32 {
        for e in -6..=6 {
            for b in -2..=2 {
                let s = step2_numerology(g, e, &int(b));
                if s.consistent && s.in_range {
                    consistent.push((g, e, b));
                }
            }
        }
    }
    ensure!(
        consistent == vec![(2, -2, 0)],
        "step 2 solutions {consistent:?}"
    );
    Ok(())
}

fn random_model(rng: &mut ChaCha8Rng) -> HilbertModel {
    let n: i64 = rng.gen_range(1..=10);
    let den: i64 = rng.gen_range(1..=6);
    let max_floor = 3.min(n);
    let floor = rng.gen_range(0..=max_floor);
    let r = int(floor) + ratio(rng.gen_range(0..den), den);
    let (d, delta) = if floor == 0 {
        // Zeros at −(n−1) and −n force Q = (t+n−1)(t+n), so d = 1 and δ = r.
        (int(1), r.clone())
    } else if floor == 1 {
        // The zero at −(n−1) needs (2 − r)d + δ = 2.
        let d_max = int(2) / (int(2) - &r);
        let d = int(1) + (&d_max - int(1)) * ratio(rng.gen_range(0..=4), 4);
        let delta = int(2) - (int(2) - &r) * &d;
        (d, delta)
    } else {
        let d = ratio(rng.gen_range(2..=80), 2);
        (d, ratio(rng.gen_range(0..=30), 3))
    };
    let inv = FanoInvariants::with_coindex(n, d, delta, r).unwrap();
    let p_n2 = HilbertModel::needs_p_n2(&inv).then(|| rng.gen_range(0..=5));
    HilbertModel::new(inv, p_n2, None).unwrap()
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1adde7);
    for _ in 0..200 {
        let m = random_model(&mut rng);
        let inv = m.invariants().clone();
        let report = build_ladder(&m).map_err(|e| format!("{inv}: {e}"))?;
        let floor = floor_i64(inv.coindex());
        let n = inv.n() as i64;
        ensure!(
            report.rungs.first().map(|r| r.j) == Some(n),
            "{inv}: ladder does not start at n"
        );
        ensure!(
            report.last().j == (floor - 1).max(1),
            "{inv}: ladder ends at {}",
            report.last().j
        );
        for (k, rung) in report.rungs.iter().enumerate() {
            ensure!(
                &rung.d == inv.d() && &rung.delta == inv.delta() && &rung.r == inv.coindex(),
                "{inv}: invariants drift at j={}",
                rung.j
            );
            ensure!(rung.j == n - k as i64, "{inv}: rung {k} has j={}", rung.j);
            ensure!(
                rung.index == inv.index() - int(k as i64),
                "{inv}: index at j={}",
                rung.j
            );
        }
        for pair in report.rungs.windows(2) {
            if let (Some(a), Some(b)) = (&pair[0].h0, &pair[1].h0) {
                ensure!(a - b == int(1), "{inv}: h0 {a} -> {b}");
            }
        }
        ensure!(
            report
                .rungs
                .iter()
                .all(|r| r.h0.is_some() == (r.class == MemberClass::WeakLogFano)),
            "{inv}: h0 missing on a Fano rung"
        );
        if floor >= 2 {
            let expected = if inv.coindex().is_integer() {
                MemberClass::LogCY
            } else {
                MemberClass::WeakLogGeneralType
            };
            ensure!(
                report.last().class == expected,
                "{inv}: last rung is {}",
                report.last().class
            );
        }
        let bsl = if inv.coindex() < &int(3) { 0 } else { 1 };
        ensure!(
            report.bsl_dim_bound == bsl,
            "{inv}: bsl bound {}",
            report.bsl_dim_bound
        );
        match (n, &report.multiplicity) {
            (1 | 2, None) => {}
            (3, Some(mb)) if mb.m_max == 2 && mb.canonical_double_point_possible => {}
            (4.., Some(mb)) if mb.m_max == 1 && !mb.canonical_double_point_possible => {}
            _ => return Err(format!("{inv}: multiplicity {:?}", report.multiplicity)),
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let entries = bundled_catalog().map_err(|e| e.to_string())?;
    ensure!(entries.len() >= 25, "only {} entries", entries.len());
    let report = crosscheck(&entries);
    ensure!(report.all_passed(), "mismatches: {:?}", report.mismatches());
    let mut mukai = 0;
    for (entry, outcome) in entries.iter().zip(&report.outcomes) {
        if !entry.name.starts_with("mukai") {
            continue;
        }
        mukai += 1;
        let inv = entry.invariants();
        let g = to_integer(&(inv.d() / int(2))).ok_or("odd Mukai degree")? + 1;
        ensure!(
            entry.model.p_n2() == Some(1),
            "{}: p_n2 = {:?}",
            entry.name,
            entry.model.p_n2()
        );
        let want = int(g + inv.n() as i64 - 1);
        ensure!(
            outcome.h0.as_ref() == Some(&want),
            "{}: h0 = {:?}, g = {g}",
            entry.name,
            outcome.h0
        );
    }
    ensure!(mukai >= 10, "only {mukai} Mukai entries");
    Ok(())
}

fn criterion_8() -> Check {
    for n in 1..=8 {
        for bad in corruptions(&projective_space(n)) {
            ensure!(
                !projective_oracle(&bad, n),
                "P^{n}: corruption {bad} not detected"
            );
        }
    }
    for n in 2..=7 {
        for bad in corruptions(&quadric(n)) {
            ensure!(
                !quadric_oracle(&bad, n),
                "Q^{n}: corruption {bad} not detected"
            );
        }
    }
    for n in 3..=10 {
        for m in identity_models(n).into_iter().step_by(7) {
            let good = build(&m).map_err(|e| e.to_string())?;
            for bad in corruptions(&good.p) {
                let bad = HilbertResult {
                    p: bad,
                    ..good.clone()
                };
                ensure!(
                    identity_oracle(&m, &bad).is_err(),
                    "{}: corruption not detected",
                    m.invariants()
                );
                ensure!(
                    !check_result(&m, &bad).is_clean(),
                    "{}: library check missed corruption",
                    m.invariants()
                );
            }
        }
    }
    for d in [1, 24, 120] {
        for k in -1..=50 {
            for bad in corruptions(&pk_poly(&int(d), k).unwrap()) {
                let detected =
                    bad.eval_int(1) != int(k + 1) || bad.compose_affine(&int(-1), &int(-1)) != bad;
                ensure!(detected, "p_{k} d={d}: corruption {bad} not detected");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("projective spaces match the binomial oracle", criterion_1),
        ("quadrics match the binomial oracle", criterion_2),
        (
            "closed-form h0 identities for cases i, ii, iii",
            criterion_3,
        ),
        ("coindex-4 family values and symmetry", criterion_4),
        ("surface certificates and ruled numerology", criterion_5),
        ("random ladders", criterion_6),
        ("bundled catalog crosscheck", criterion_7),
        ("negative controls", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {}: PASS {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
