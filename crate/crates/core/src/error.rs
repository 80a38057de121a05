use thiserror::Error;

/// Errors raised by the normalization engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic outside the domain of an operation, e.g. inverting zero.
    #[error("domain error: {0}")]
    Domain(String),
    /// Operands that cannot be combined (frame mismatch, missing terms, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A result failed an internal consistency check.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// Malformed textual input. `offset` is a byte offset into the parsed string.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
