//! Exact computer algebra for partial Bell polynomials, their multivariate
//! Stirling companions and the families, inversion formulas and reciprocity
//! laws built on them.
//!
//! All arithmetic is over arbitrary-precision rationals. Polynomials are
//! sparse Laurent polynomials in `X_0, X_1, ...` where only `X_0` and `X_1`
//! may carry negative exponents.

pub mod derived;
pub mod error;
pub mod extended;
pub mod families;
pub mod inversion;
pub mod numbers;
pub mod polyring;
pub mod random;
pub mod series;
pub mod suites;

pub use error::{Error, Result};
pub use families::{bell, stirling_a, FamilyId, FamilyTable, Term};
pub use polyring::{t, x, Monomial, MultiPoly, PolyError, Rational, Var, S_VAR, T_VAR};
pub use series::{LaurentPoly1, PowerSeries, SeriesError};
