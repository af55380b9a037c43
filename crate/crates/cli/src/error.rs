use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] robinson_core::Error),

    /// A guarantee that holds by construction failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Input(_) => 3,
            CliError::Core(robinson_core::Error::Invariant(_) | robinson_core::Error::NotRobinson) => 4,
            CliError::Core(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}
