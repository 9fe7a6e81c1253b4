use thiserror::Error;

/// Errors produced by state construction, basis building and protocol execution.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    Range(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("register of {requested} amplitudes exceeds the size cap of {cap}")]
    Size { requested: String, cap: usize },

    #[error("state is not normalized (norm {norm})")]
    Normalization { norm: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_size(&self) -> bool {
        matches!(self, Error::Size { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
