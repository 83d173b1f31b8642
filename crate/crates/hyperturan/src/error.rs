use std::path::PathBuf;

use crate::graph_file::FormatError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments that clap could not catch; exits with 64.
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Core(#[from] hyperturan_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            _ => 1,
        }
    }
}
