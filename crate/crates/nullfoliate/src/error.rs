//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("irrational outside field: {0}")]
    IrrationalOutsideField(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },
    #[error("zero spinor")]
    ZeroSpinor,
    #[error("spinor is not pure")]
    NotPure,
    #[error("vector is not a unit vector")]
    NonUnit,
    #[error("chart quadric relation violated")]
    QuadricViolation,
    #[error("malformed tensor: {0}")]
    Malformed(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("eigenvalue collision: {0}")]
    EigenCollision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no invariant form found")]
    NoInvariantForm,
}
