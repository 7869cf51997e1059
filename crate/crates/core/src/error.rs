use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that requires a series with zero constant term got one
    /// with a nonzero constant term.
    #[error("{op}: series has nonzero constant term")]
    NonzeroConstant { op: &'static str },

    #[error("truncation mismatch: {0}")]
    Truncation(String),

    /// A quantity that must be an exact integer (or divide exactly) did not.
    /// This always indicates a bug, never bad input.
    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
