use thiserror::Error;

use crate::graph::Family;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate direction: points {0} and {1} coincide")]
    DegenerateDirection(usize, usize),

    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),

    #[error("duplicate point: {0} and {1} have identical coordinates")]
    DuplicatePoint(usize, usize),

    #[error("invalid cone count k={0}: {1}")]
    InvalidConeCount(usize, &'static str),

    #[error("point id {0} out of range (n={1})")]
    InvalidId(usize, usize),

    #[error("filter requires unfiltered family, got {0}")]
    FilterFamily(Family),

    #[error("operation requires family {expected}, got {got}")]
    FamilyMismatch { expected: Family, got: Family },

    #[error("graphs are defined over different point sets or cone systems")]
    MismatchedGraphs,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed graph document: {0}")]
    Graph(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
