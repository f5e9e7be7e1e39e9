use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    /// A family-specific restriction on the characteristic was violated.
    #[error("field {field} not allowed for {family}: {requirement}")]
    FieldGuard { family: String, field: String, requirement: String },

    #[error("degree bound {bound} too small: {detail}")]
    DegreeBound { bound: usize, detail: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A consistency check inside the library failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
