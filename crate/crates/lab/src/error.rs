use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

/// Everything that can go wrong outside the pure core.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Core(#[from] pbdrr_core::Error),
    #[error("{0}")]
    Argument(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

impl LabError {
    /// Process exit code: 1 for bad input, 2 for I/O, 3 for integrity.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Parse { .. } | LabError::Argument(_) => 1,
            LabError::Core(pbdrr_core::Error::Integrity(_)) => 3,
            LabError::Core(_) => 1,
            LabError::Io { .. } | LabError::Output(_) => 2,
        }
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        LabError::Argument(msg.into())
    }
}
