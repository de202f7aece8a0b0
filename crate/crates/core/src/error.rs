use std::io;

use thiserror::Error;

use crate::pia::PiaError;

/// Errors surfaced by the command-line front end, each with its exit status.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Diverged(PiaError),
    #[error("{0}")]
    Other(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Verification(_) => 1,
            AppError::Config(_) => 2,
            AppError::Io(_) => 3,
            AppError::Diverged(_) => 4,
            AppError::Other(_) => 1,
        }
    }
}

impl From<csv::Error> for AppError {
    fn from(e: csv::Error) -> Self {
        AppError::Io(io::Error::other(e))
    }
}

impl From<PiaError> for AppError {
    fn from(e: PiaError) -> Self {
        match e {
            PiaError::Diverged { .. } => AppError::Diverged(e),
            other => AppError::Other(other.to_string()),
        }
    }
}
