use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = SpinexError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum SpinexError {
    /// Input table is not rectangular or has a zero dimension.
    #[error("shape error: {0}")]
    Shape(String),

    #[error("non-finite value {value} at row {row}, column {col}")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("{0}")]
    Argument(String),

    /// Input has too little structure for the requested computation.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{0}")]
    Threshold(String),

    #[error("AUC is undefined: {0}")]
    UndefinedAuc(String),

    #[error("aggregation error: {0}")]
    Aggregation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SpinexError {
    pub fn argument(msg: impl Into<String>) -> Self {
        SpinexError::Argument(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SpinexError::Io {
            path: path.into(),
            source,
        }
    }
}
