use thiserror::Error;

use crate::units::Unit;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (non-positive
    /// run rate, exponent, probability out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unit mismatch: expected {expected}, found {found}")]
    UnitMismatch { expected: Unit, found: Unit },

    /// A data row could not be decoded.
    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    /// A decoded record violates a record-level invariant.
    #[error("invalid record {season} {team}: {message}")]
    Validation {
        season: i32,
        team: String,
        message: String,
    },

    #[error("season {0} not found")]
    NotFound(i32),

    #[error("insufficient data: need at least {needed} observations, have {have}")]
    InsufficientData { needed: usize, have: usize },

    #[error("degenerate design: regressor has zero variance")]
    DegenerateDesign,

    #[error("resource limit: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
