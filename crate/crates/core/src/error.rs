use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module of the crate.
///
/// The variants are kept coarse on purpose: the command-line front-end maps
/// each one to its own exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data: table dimensions, out-of-range indices.
    #[error("structural error: {0}")]
    Structural(String),
    /// Input is well formed but violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A configured size or memory limit would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The representation does not admit a decision procedure here.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A bounded search or iteration ran out before reaching a verdict.
    #[error("bound exhausted: {0}")]
    BoundExhausted(String),
    /// Two independent computations of the same object disagree.
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
