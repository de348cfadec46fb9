//! Numerical shadow of the regular plt ladder
//! `X = X_n ⊃ X_{n−1} ⊃ ⋯ ⊃ X_c` cut out by general members of `|H|`.
//!
//! Along the ladder `d`, `δ` and the coindex `r` stay fixed while the index
//! drops by one per rung: `−(K_j + B_j) ≡ (j − r + 1)H_j`. The plurigenera
//! `p_{n−2}`, `p_{n−3}` are carried down unchanged; that is a modelling
//! assumption, not something derived here.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hilbert::{build, HilbertCase, HilbertModel};
use crate::invariants::{classify_member, FanoInvariants, MemberClass};
use crate::ratpoly::{int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRung {
    pub j: i64,
    pub d: Rational,
    pub delta: Rational,
    /// Coindex, constant along the ladder.
    pub r: Rational,
    /// `j − r + 1`.
    pub index: Rational,
    pub class: MemberClass,
    /// Only computed on weak log Fano rungs.
    pub h0: Option<Rational>,
    pub case: Option<HilbertCase>,
    /// `dim |H_j| ≥ j − 1`.
    pub dim_linear_system_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityBound {
    /// `m(P; S) < 1 + 2/(n − 2)`.
    pub strict_bound: Rational,
    pub m_max: i64,
    pub canonical_double_point_possible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderReport {
    pub invariants: FanoInvariants,
    /// From `j = n` down to `j = c`.
    pub rungs: Vec<LadderRung>,
    /// Last rung, `max(⌊r⌋ − 1, 1)`.
    pub c: i64,
    /// `⌊r⌋ − 1` before clamping; may be `≤ 0`.
    pub nominal_c: i64,
    pub bsl_dim_bound: i64,
    pub multiplicity: Option<MultiplicityBound>,
}

impl LadderReport {
    pub fn last(&self) -> &LadderRung {
        self.rungs.last().expect("ladders have at least one rung")
    }
}

fn check_hypotheses(inv: &FanoInvariants) -> Result<()> {
    if inv.coindex() >= &int(4) {
        return Err(Error::HypothesisViolated(format!(
            "coindex must satisfy r<4 (got r = {})",
            inv.coindex()
        )));
    }
    if !inv.index().is_positive() {
        return Err(Error::HypothesisViolated(format!(
            "index must satisfy n-r+1>0 (got {})",
            inv.index()
        )));
    }
    Ok(())
}

pub fn build_ladder(model: &HilbertModel) -> Result<LadderReport> {
    let inv = model.invariants();
    check_hypotheses(inv)?;
    let r = inv.coindex();
    let nominal_c = inv.floor_coindex() - 1;
    let c = nominal_c.max(1);
    let n = inv.n() as i64;

    let mut rungs: Vec<LadderRung> = Vec::new();
    for j in (c..=n).rev() {
        let class = classify_member(j, r);
        let (h0, case) = if class == MemberClass::WeakLogFano {
            let result = build(&model.restrict_to(j)?)?;
            (Some(result.h0), Some(result.case))
        } else {
            (None, None)
        };
        if let (Some(prev), Some(cur)) = (rungs.last().and_then(|r| r.h0.as_ref()), h0.as_ref()) {
            if !(prev - cur).is_one() {
                return Err(Error::HypothesisViolated(format!(
                    "regularity needs h0 to drop by exactly 1 per rung, but h0(X_{}) = {prev} and h0(X_{j}) = {cur}",
                    j + 1
                )));
            }
        }
        rungs.push(LadderRung {
            j,
            d: inv.d().clone(),
            delta: inv.delta().clone(),
            r: r.clone(),
            index: int(j + 1) - r,
            class,
            h0,
            case,
            dim_linear_system_bound: j - 1,
        });
    }

    let bsl_dim_bound = if r.is_zero() {
        0
    } else {
        bsl_dimension_bound(r)?
    };
    let multiplicity = if n >= 3 {
        Some(multiplicity_bound(n)?)
    } else {
        None
    };
    Ok(LadderReport {
        invariants: inv.clone(),
        rungs,
        c,
        nominal_c,
        bsl_dim_bound,
        multiplicity,
    })
}

/// `0` for `0 < r < 3` (finitely many base points), `1` for `3 ≤ r < 4`.
pub fn bsl_dimension_bound(r: &Rational) -> Result<i64> {
    if !r.is_positive() || r >= &int(4) {
        return Err(Error::HypothesisViolated(format!(
            "base-locus bound needs 0<r<4 (got r = {r})"
        )));
    }
    Ok(if r < &int(3) { 0 } else { 1 })
}

/// Largest integer multiplicity `m < 1 + 2/(n−2)` of a general member at an isolated singular point.
pub fn multiplicity_bound(n: i64) -> Result<MultiplicityBound> {
    if n < 3 {
        return Err(Error::HypothesisViolated(format!(
            "multiplicity bound needs n>=3 (got n = {n})"
        )));
    }
    let strict_bound = int(1) + ratio(2, n - 2);
    let m_max = strict_bound.ceil().to_integer().to_i64().expect("small") - 1;
    Ok(MultiplicityBound {
        strict_bound,
        m_max,
        canonical_double_point_possible: m_max >= 2,
    })
}

/// `h⁰(H_j)` on every weak log Fano rung, top first.
pub fn h0_sequence(model: &HilbertModel) -> Result<Vec<Rational>> {
    Ok(build_ladder(model)?
        .rungs
        .into_iter()
        .filter_map(|rung| rung.h0)
        .collect())
}

impl fmt::Display for LadderRung {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h0 = self
            .h0
            .as_ref()
            .map_or("-".to_string(), ToString::to_string);
        write!(
            f,
            "X_{} index={} {} h0={}",
            self.j, self.index, self.class, h0
        )
    }
}
