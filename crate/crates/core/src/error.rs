use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, UnnError>;

#[derive(Debug, Error)]
pub enum UnnError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A reconstruction needs at least one other embedded pattern.
    #[error("no latent neighbors: {embedded} pattern(s) embedded, at least 2 required")]
    NoNeighbors { embedded: usize },

    /// `row` and `column` are 1-based positions in the source file.
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Format(String),

    #[error("dataset has {n} patterns, exhaustive search is capped at {max_n}")]
    SizeCap { n: usize, max_n: usize },

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl UnnError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        UnnError::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        UnnError::Io {
            path: path.into(),
            source,
        }
    }
}
