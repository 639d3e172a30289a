use std::io;

use deckbench_core::{DeckError, EnumerateError, FamilyError, Graph6Error, RecognizeError};
use thiserror::Error;

use crate::deckfile::DeckFileError;

/// Process exit statuses. Usage errors (2) come from clap.
pub mod exit {
    pub const OK: i32 = 0;
    pub const BOUND_VIOLATED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const CAP: i32 = 4;
    pub const INVALID: i32 = 5;
    pub const IO: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed graph6 argument {arg:?}: {source}")]
    Graph6 { arg: String, source: Graph6Error },
    #[error("{path}: {source}")]
    DeckFile { path: String, source: DeckFileError },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Recognize(RecognizeError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Deck(#[from] DeckError),
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl From<RecognizeError> for CliError {
    fn from(e: RecognizeError) -> Self {
        CliError::Recognize(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Graph6 { .. } | CliError::DeckFile { .. } => exit::PARSE,
            CliError::Enumerate(_) => exit::CAP,
            CliError::Recognize(e) => match e {
                RecognizeError::CapExceeded { .. } | RecognizeError::Undecidable { .. } => exit::CAP,
                _ => exit::INVALID,
            },
            CliError::Family(FamilyError::ParameterTooLarge { .. }) => exit::CAP,
            CliError::Family(_) | CliError::Deck(_) | CliError::Invalid(_) => exit::INVALID,
            CliError::Io { .. } | CliError::Output(_) => exit::IO,
        }
    }
}
