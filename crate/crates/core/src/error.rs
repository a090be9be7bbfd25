use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parameter outside the admissible set: {0}")]
    OutOfRange(String),
    #[error("incompatible series: {0}")]
    Incompatible(String),
    #[error("non-convergent factor: {0}")]
    NonConvergent(String),
    #[error("input is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("tag mismatch: {0}")]
    TagMismatch(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("inadmissible dual pair: {0}")]
    Inadmissible(String),
    #[error("enumeration invariant violated: {0}")]
    Enumeration(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
