use std::io;

use crate::input::ParseError;
use crate::verify::Mismatch;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{0}")]
    Config(String),

    #[error("verification failed\n{0}")]
    Verify(Box<Mismatch>),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code: 1 for a verification failure, 2 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            _ => 2,
        }
    }
}
