use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("instance is empty after normalization")]
    EmptyInstance,
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

impl ScsError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ScsError::InvalidArgument(msg.into())
    }

    /// Short machine-readable tag, used for the CLI's JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            ScsError::InvalidArgument(_) => "invalid-argument",
            ScsError::EmptyInstance => "empty-instance",
            ScsError::Capacity(_) => "capacity",
            ScsError::NotFound(_) => "not-found",
            ScsError::Parse { .. } => "parse",
            ScsError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for ScsError {
    fn from(e: std::io::Error) -> Self {
        ScsError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, ScsError>;
