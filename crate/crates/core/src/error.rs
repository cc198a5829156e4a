use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by validated constructors and fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An input that must be a finite real number was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// A precondition on an argument value was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input that must carry information was identically zero or empty.
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// A resource request exceeded what is available.
    #[error("insufficient capacity: {0}")]
    Capacity(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
