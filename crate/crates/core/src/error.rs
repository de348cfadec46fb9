use thiserror::Error;

use crate::ratpoly::Rational;

/// Errors raised by the library.
///
/// Messages name the violated inequality so they can be shown to CLI users as-is.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root mismatch: p({root}) = {value}, expected 0")]
    RootMismatch {
        root: Box<Rational>,
        value: Box<Rational>,
    },

    #[error("invalid dimension: n must satisfy n >= 1 (got {0})")]
    InvalidDimension(i64),

    #[error("invalid index: index must satisfy 0 < index <= n+1 (got index {index} for n = {n})")]
    InvalidIndex { n: u32, index: Rational },

    #[error("invalid degree: d = H^n must satisfy d >= 1 (got {0})")]
    InvalidDegree(Rational),

    #[error("invalid boundary degree: delta = B.H^(n-1) must satisfy delta >= 0 (got {0})")]
    InvalidDelta(Rational),

    #[error("negative plurigenus: {name} = h^0(K+jH) must satisfy {name} >= 0 (got {value})")]
    NegativePlurigenus { name: &'static str, value: i64 },

    #[error("forced root violated: p({root}) = {value}, but every integer -(n-floor(r)) <= t < 0 must be a zero")]
    ForcedRootViolated { root: i64, value: Box<Rational> },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("line {line}: parse error: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: validation error: {message}")]
    Validation { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
