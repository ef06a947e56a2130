use std::io;

use thiserror::Error;

use crate::operators::OperatorKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("operator {operator} cannot act on a {representation} state")]
    IncompatibleOperator { operator: OperatorKind, representation: &'static str },

    #[error("state of length {len} is too short for this operator")]
    DegenerateState { len: usize },

    /// The state has no neighbor distinct from itself under this operator
    /// (e.g. swapping entries of a constant value vector).
    #[error("no distinct neighbor exists under {0}")]
    NoDistinctNeighbor(OperatorKind),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("value {value} is outside the admissible domain")]
    DomainViolation { value: f64 },

    #[error("index {index} out of range for alphabet of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("reference optimum must be nonzero")]
    DivisionByZero,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported instance: {0}")]
    UnsupportedType(String),

    #[error("invalid instance size: {0}")]
    InvalidSize(String),

    #[error("instance too large for exhaustive search: {size} exceeds limit {limit}")]
    TooLarge { size: u128, limit: u128 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
