use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] benzel_core::Error),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("not in cache and recomputation is disabled: {0}")]
    NotCached(String),
    #[error("network error for {id}: {reason}; no bundled fixture for {id}")]
    Network { id: String, reason: String },
    #[error("malformed b-file {source_name} line {line}: {reason}")]
    BFile {
        source_name: String,
        line: usize,
        reason: String,
    },
    #[error("{path}: {err}")]
    Io { path: PathBuf, err: io::Error },
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn io(path: impl Into<PathBuf>, err: io::Error) -> CliError {
        CliError::Io {
            path: path.into(),
            err,
        }
    }

    /// 0 ok, 1 mismatch, 2 usage, 3 budget, 4 network or fixture.
    pub fn exit_code(&self) -> i32 {
        use benzel_core::Error as E;
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::ParamOutOfRange(_) | E::EmptyTileSet | E::BadTileCode(_) => 2,
                E::BudgetExceeded(_) | E::WindowTooWide(_) | E::TooManyTilings { .. } => 3,
                _ => 1,
            },
            CliError::NotCached(_) => 3,
            CliError::Network { .. } | CliError::BFile { .. } | CliError::Io { .. } => 4,
        }
    }
}
