use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different fields.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    /// The operation is undefined at this input (inverse of zero, multiplicity of the zero polynomial, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Arguments violate the operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
