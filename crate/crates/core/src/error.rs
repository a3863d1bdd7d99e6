use thiserror::Error;

use crate::exact::Scalar;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational `{0}` (expected an integer or p/q)")]
    InvalidRational(String),

    #[error("orbit of {size} points exceeds the cap of {cap} (raise --orbit-cap or use symbolic operations)")]
    OrbitTooLarge { size: u128, cap: u128 },

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("point is not on the boundary (gauge {gauge})")]
    NotOnBoundary { gauge: Scalar },

    #[error("invalid symmetry group: {0}")]
    InvalidGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation not available on a symbolic body: {0}")]
    SymbolicBody(&'static str),

    #[error("resource limit exceeded after {explored} nodes (lower bound {lower}, best found {upper})")]
    ResourceLimit {
        explored: u64,
        lower: usize,
        upper: usize,
    },

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
