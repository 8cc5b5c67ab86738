use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] fluctent::Error),
    #[error("validation failed: {0} of {1} properties did not pass")]
    ValidationFailed(usize, usize),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// 1 for a failed validation run, 2 for every usage, parse or input error.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::ValidationFailed(..) => 1,
            _ => 2,
        }
    }
}
