use std::path::PathBuf;

use thiserror::Error;

/// Everything the CLI reports with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] algord_core::Error),
    #[error("{0}")]
    Usage(String),
}
