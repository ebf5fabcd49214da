use std::path::PathBuf;

use thiserror::Error;

/// Everything that can stop a command.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] ctqw_core::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{failed} of {total} checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    /// Stable, machine-readable category printed in front of the message.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Core(ctqw_core::Error::InvalidParameter { .. } | ctqw_core::Error::NodeOutOfRange { .. }) => {
                "validation"
            }
            CliError::Core(_) => "compute",
            CliError::Json(_) => "json",
            CliError::VerifyFailed { .. } => "verify",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "validation" => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
