use thiserror::Error;

/// Errors produced by graph construction, generators and the estimators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex id {id} out of range (n = {n})")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
