//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("space-time dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("operation requires s = 2, configuration has s = {0}")]
    RequiresS2(usize),

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("configuration must have at least {required} points, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("field statistics length {fields} does not match point count {points}")]
    FieldCountMismatch { fields: usize, points: usize },

    #[error("boost axis must lie in 1..={max}, got {axis}")]
    InvalidAxis { axis: usize, max: usize },

    #[error("plane indices must satisfy 0 <= i < j < {s}, got ({i}, {j})")]
    InvalidPlane { i: usize, j: usize, s: usize },

    #[error("scaling parameter must be nonzero")]
    ZeroScaling,

    #[error("matrix fails the metric condition: max deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotLorentz { deviation: f64, tolerance: f64 },

    #[error("candidate {0:?} is not a permutation of 1..={1}")]
    InvalidPermutation(Vec<usize>, usize),

    #[error("configuration is not real: imaginary part {0:e} exceeds epsilon")]
    NotReal(f64),

    #[error("{name} must be positive")]
    NonPositiveCount { name: &'static str },

    #[error("suborder slice (i={i}, k={k}) out of range for m = {m}")]
    SliceOutOfRange { i: usize, k: usize, m: usize },

    #[error("cell {0:?} is not registered in the catalogue")]
    UnknownCell(String),

    #[error("line {line}: {message}")]
    HornParse { line: usize, message: String },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
}
