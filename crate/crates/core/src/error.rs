use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: shapes, indices, non-Hermitian operands and so on.
    #[error("validation error: {0}")]
    Validation(String),
    /// A dense object would exceed the configured size cap.
    #[error("capacity exceeded: {what} needs {required}, limit is {limit}")]
    Capacity {
        what: &'static str,
        required: u128,
        limit: u128,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A scalar function was undefined on part of a spectrum.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
