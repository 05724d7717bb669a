use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported blocklength {0}: must be a positive multiple of 4")]
    UnsupportedBlocklength(usize),

    #[error("class index {m} is not valid for blocklength {n}")]
    InvalidClassIndex { n: usize, m: i64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("zero matrix has no rank factorisation")]
    ZeroMatrix,

    #[error("{0} is not a power of two (n >= 1)")]
    NotPowerOfTwo(u64),

    #[error("malformed plan document: {0}")]
    PlanFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, actual: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
