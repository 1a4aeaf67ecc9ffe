use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested test is not defined for this input size.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal consistency check (equilibrium residual, kernel contents,
    /// rank bound) failed during an audited analysis.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(message.into()))
}
