use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular: no nonzero pivot for row {row}")]
    Singular { row: usize },

    #[error("target unreachable: vertex 0 cannot be reached on Z_{modulus} with steps {steps:?}")]
    Unreachable { modulus: usize, steps: Vec<usize> },

    #[error("method not applicable: {0}")]
    Inapplicable(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("sequence table holds {len} terms but index {index} was requested")]
    TableTooShort { len: usize, index: usize },

    #[error("refusing to compare: {truncated} of {trials} trials hit the step cap")]
    Truncated { truncated: u64, trials: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
