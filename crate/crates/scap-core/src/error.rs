use std::io;
use std::path::PathBuf;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("corpus error: {0}")]
    Corpus(String),

    /// A corpus failed validation; the message carries one violation per line.
    #[error("corpus validation failed:\n{0}")]
    Validation(String),

    #[error("lex error at byte {offset}: {message}")]
    Lex { offset: usize, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("{}: {source}", path.display())]
    Load { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
