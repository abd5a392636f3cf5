use thiserror::Error;

/// Errors raised across the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A configured size cap was exceeded.
    #[error("{what} exceeds cap: {actual} > {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    /// Malformed input (permutations, tables, documents, selectors).
    #[error("validation error: {0}")]
    Validation(String),
    /// The operation is undefined on this input (e.g. not a p-group).
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A computation contradicted a proven statement. Never swallowed.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
