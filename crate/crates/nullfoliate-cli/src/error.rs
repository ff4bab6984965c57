//! Errors raised by configuration, suite dispatch and report I/O.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Library(#[from] nullfoliate::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
