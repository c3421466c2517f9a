use thiserror::Error;

use crate::ratpoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [v{0},v{1}] must be given with i < j")]
    BracketOrder(usize, usize),
    #[error("bracket [v{0},v{1}] given twice")]
    DuplicateBracket(usize, usize),
    #[error("Jacobi identity fails: {}", .0.join("; "))]
    JacobiViolation(Vec<String>),
    #[error("parameter `{0}` is used but has no constraint")]
    UndeclaredParameter(String),
    #[error("parameter `{0}` has more than one constraint")]
    DuplicateConstraint(String),
    #[error("`{0}` is reserved and cannot be a structure parameter")]
    ReservedParameter(String),
    #[error("sample violates constraint: {name} = {value} is not {relation}")]
    ConstraintViolation {
        name: String,
        value: String,
        relation: String,
    },
    #[error("algebra is not nilpotent at the sample")]
    NotNilpotentAtSample,
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
