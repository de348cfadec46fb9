//! Exact rational scalars and dense univariate polynomials over them.
//!
//! `Rational` is `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. `Poly` stores coefficients in ascending
//! order and strips trailing zeros eagerly, so structural equality is
//! polynomial identity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `num/den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `⌊x⌋` as a machine integer.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("floor out of i64 range")
}

/// `x` as a machine integer if it is integral and fits.
pub fn to_integer(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Parses `p/q` or an integer literal. Decimals and zero denominators are rejected.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    let parse_int = |s: &str| -> std::result::Result<BigInt, String> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("`{text}` is not a rational of the form p/q"));
        }
        s.parse::<BigInt>().map_err(|e| e.to_string())
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(format!("`{text}` has a zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Dense polynomial in one variable `t`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `t - root`.
    pub fn linear(root: &Rational) -> Self {
        Poly::from_coeffs(vec![-root.clone(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `leading · ∏ (t − root_i)`.
    pub fn from_roots(leading: Rational, roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::constant(leading), |acc, root| {
            &acc * &Poly::linear(root)
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Synthetic division by `t − root`. Fails unless `root` is a zero of `self`.
    pub fn divide_linear(&self, root: &Rational) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let mut quotient = vec![Rational::zero(); self.coeffs.len() - 1];
        let mut carry = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            carry = carry * root + c;
            if k > 0 {
                quotient[k - 1] = carry.clone();
            }
        }
        if !carry.is_zero() {
            return Err(Error::RootMismatch {
                root: Box::new(root.clone()),
                value: Box::new(carry),
            });
        }
        Ok(Poly::from_coeffs(quotient))
    }

    /// `p(scale·t + shift)`.
    pub fn compose_affine(&self, scale: &Rational, shift: &Rational) -> Poly {
        let inner = Poly::from_coeffs(vec![shift.clone(), scale.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &inner) + &Poly::constant(c.clone())
        })
    }

    /// Identity test by evaluation at `max(deg) + 1` distinct integer points.
    ///
    /// Agrees with `==` for all inputs; kept as an independent route.
    pub fn agrees_by_evaluation(&self, other: &Poly) -> bool {
        let bound = self.coeffs.len().max(other.coeffs.len()) as i64;
        (0..bound.max(1)).all(|x| self.eval_int(x) == other.eval_int(x))
    }

    /// Renders the coefficient list in ascending order, e.g. `[1, 11/6, 1, 1/6]`.
    pub fn coeff_list(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("[{}]", items.join(", "))
    }
}

/// `χ(O_{ℙⁿ}(t + shift)) = C(t + shift + n, n)` as a polynomial in `t`.
pub fn binomial_hilbert(n: u32, shift: i64) -> Poly {
    let leading = Rational::new(BigInt::one(), factorial(n));
    let roots: Vec<Rational> = (1..=n as i64).map(|k| int(-(shift + k))).collect();
    Poly::from_roots(leading, &roots)
}

/// Coefficientwise equality, which for exact coefficients certifies `p ≡ q`.
pub fn poly_identity_equal(p: &Poly, q: &Poly) -> bool {
    p == q
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{abs}*t^{k}")?,
            }
        }
        Ok(())
    }
}
