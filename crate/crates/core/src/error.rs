use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition (range, shape, consistency).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A structural precondition such as the divisibility gate does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A configurable size cap would be exceeded.
    #[error("{what} exceeds cap {cap}")]
    Size { what: String, cap: u64 },

    /// Malformed input text.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Exact integer arithmetic would overflow.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
