use thiserror::Error;

/// Error type shared by every operation in the crate.
///
/// The variants map onto the CLI exit codes: `Parse` and `Usage` are usage
/// errors (exit 2), `Resource` is a resource-cap error (exit 3), and the
/// remaining mathematical failures exit 1.
#[derive(Debug, Error)]
pub enum DgaError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("insufficient validity: {0}")]
    Validity(String),

    #[error("infinite search space: {0}")]
    InfiniteSearch(String),

    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, DgaError>;

impl DgaError {
    /// CLI exit code for this error per the documented contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            DgaError::Parse { .. } | DgaError::Usage(_) => 2,
            DgaError::Resource(_) => 3,
            _ => 1,
        }
    }
}
