//! Numerical invariants `(n, d, δ, r)` of a polarized weak log Fano pair.
//!
//! `r` is the numerical coindex and `ind = n + 1 − r` the numerical index of
//! the polarization `H`, so that `−(K + B) ≡ ind·H`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{floor_i64, int, Rational};

/// How the polarization is specified: by its coindex `r` or its index `ind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polarization {
    Coindex(Rational),
    Index(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FanoInvariants {
    n: u32,
    d: Rational,
    delta: Rational,
    r: Rational,
    index: Rational,
}

impl FanoInvariants {
    pub fn new(n: i64, d: Rational, delta: Rational, polarization: Polarization) -> Result<Self> {
        if n < 1 || n > u32::MAX as i64 {
            return Err(Error::InvalidDimension(n));
        }
        if d < int(1) {
            return Err(Error::InvalidDegree(d));
        }
        if delta.is_negative() {
            return Err(Error::InvalidDelta(delta));
        }
        let top = int(n + 1);
        let (r, index) = match polarization {
            Polarization::Coindex(r) => (r.clone(), &top - r),
            Polarization::Index(index) => (&top - &index, index),
        };
        if !index.is_positive() || index > top {
            return Err(Error::InvalidIndex { n: n as u32, index });
        }
        Ok(FanoInvariants {
            n: n as u32,
            d,
            delta,
            r,
            index,
        })
    }

    pub fn with_coindex(n: i64, d: Rational, delta: Rational, r: Rational) -> Result<Self> {
        Self::new(n, d, delta, Polarization::Coindex(r))
    }

    pub fn with_index(n: i64, d: Rational, delta: Rational, index: Rational) -> Result<Self> {
        Self::new(n, d, delta, Polarization::Index(index))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `H^n`.
    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// `B·H^{n−1}`.
    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn coindex(&self) -> &Rational {
        &self.r
    }

    pub fn index(&self) -> &Rational {
        &self.index
    }

    pub fn floor_coindex(&self) -> i64 {
        floor_i64(&self.r)
    }

    /// `−K·H^{n−1} = ind·d + δ`.
    pub fn anticanonical_degree(&self) -> Rational {
        &self.index * &self.d + &self.delta
    }

    /// `d(4 − r) + δ = −(K + (n−3)H)·H^{n−1}`, the quantity shared by every h⁰ closed form.
    pub fn coindex4_defect(&self) -> Rational {
        &self.d * (int(4) - &self.r) + &self.delta
    }

    /// The same `(d, δ, r)` on a member of dimension `j`.
    pub fn restrict_to(&self, j: i64) -> Result<Self> {
        Self::with_coindex(j, self.d.clone(), self.delta.clone(), self.r.clone())
    }
}

impl fmt::Display for FanoInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} d={} delta={} r={} index={}",
            self.n, self.d, self.delta, self.r, self.index
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MemberClass {
    WeakLogFano,
    LogCY,
    WeakLogGeneralType,
}

impl MemberClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MemberClass::WeakLogFano => "WeakLogFano",
            MemberClass::LogCY => "LogCY",
            MemberClass::WeakLogGeneralType => "WeakLogGeneralType",
        }
    }
}

impl fmt::Display for MemberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class of a `j`-dimensional ladder member with `−(K_j + B_j) ≡ (j − r + 1)H_j`.
pub fn classify_member(j: i64, r: &Rational) -> MemberClass {
    let coefficient = int(j + 1) - r;
    if coefficient.is_positive() {
        MemberClass::WeakLogFano
    } else if coefficient.is_zero() {
        MemberClass::LogCY
    } else {
        MemberClass::WeakLogGeneralType
    }
}
