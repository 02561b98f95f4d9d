use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {point} outside the support of {family}")]
    OutsideSupport { family: String, point: String },

    #[error("index {index} out of range: {what}")]
    IndexOutOfRange { index: usize, what: String },

    #[error("degenerate coefficient: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-convergent tail: {0}")]
    NonConvergentTail(String),

    #[error("singular evaluation: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
