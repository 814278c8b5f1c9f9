use thiserror::Error;

use crate::polyring::PolyError;
use crate::series::SeriesError;

/// Errors raised by the family, inversion and reciprocity computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("composition case violated: {0}")]
    CaseViolation(String),
    #[error("unsupported term: {0}")]
    UnsupportedTerm(String),
    #[error("family is not regular (Q_(1,1) must be a nonzero unit)")]
    NotRegular,
    #[error("series is not compositionally invertible")]
    NotInvertible,
    #[error("index outside the domain: {0}")]
    DomainViolation(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
