use thiserror::Error;

use crate::classify::ImageClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("algebra level mismatch: {left} vs {right}")]
    LevelMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is not multilinear")]
    NotMultilinear,

    #[error("no assignment for variable x{0}")]
    MissingAssignment(u32),

    #[error("resource bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("polynomial image is {0}, expected full")]
    NotFull(ImageClass),

    #[error("preimage search failed after {} attempts", trace.len())]
    SearchFailed { trace: Vec<String> },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
