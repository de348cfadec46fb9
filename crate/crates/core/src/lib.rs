//! Exact computations on polarized weak log Fano pairs `(X, B, H)`.
//!
//! * [`ratpoly`]: exact rationals and dense univariate polynomials.
//! * [`invariants`]: the numerical data `(n, d, δ, r)` and member classes.
//! * [`hilbert`]: Hilbert polynomials `χ(O_X(tH))` and the resulting `h⁰(H)`.
//! * [`surface`]: Riemann–Roch nonvanishing certificates on log surfaces.
//! * [`ladder`]: ladders of general members and their base-locus bounds.
//! * [`catalog`]: a file-backed catalog of classical examples and its cross-check.
//! * [`cli`]: the `fano-ladder` command-line front end.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod invariants;
pub mod ladder;
pub mod ratpoly;
pub mod surface;

pub use error::{Error, Result};
pub use hilbert::{HilbertCase, HilbertModel, HilbertResult};
pub use invariants::{FanoInvariants, MemberClass, Polarization};
pub use ratpoly::{Poly, Rational};
