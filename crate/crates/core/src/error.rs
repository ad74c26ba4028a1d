use thiserror::Error;

/// Errors raised by the algebra layers and the session runner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("division by zero: {0}")]
    ZeroDivision(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element is not in the homogeneous quotient ring: {0}")]
    NotGraded(String),

    #[error("not a monomial ideal: {0}")]
    NotMonomial(String),

    #[error("session validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
