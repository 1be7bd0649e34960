use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("scan stopped after {completed} of {total} rows (time budget exhausted)")]
    Partial { completed: usize, total: usize },

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for malformed input, 3 for well-formed but unsupported parameters, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Partial { .. } | CliError::Io(_) => 1,
        }
    }
}

impl From<riley::Error> for CliError {
    fn from(e: riley::Error) -> Self {
        match e {
            riley::Error::Parse(m) => CliError::Parse(m),
            other => CliError::Unsupported(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
