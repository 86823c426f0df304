use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("invariant extraction failed: {0}")]
    Invariants(String),
}

pub type Result<T> = std::result::Result<T, Error>;
