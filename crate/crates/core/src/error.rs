use thiserror::Error;

/// Errors raised by the symbol, operator and solver layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid pseudo-spline order (J={j}, L={l}): {reason}")]
    InvalidOrder {
        j: u32,
        l: u32,
        reason: &'static str,
    },

    #[error("derivative order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: u32, max: u32 },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("incompatible dimension {n} for arity {g}: {reason}")]
    IncompatibleDimension {
        n: usize,
        g: usize,
        reason: &'static str,
    },

    #[error("zero diagonal entry at row {0}")]
    ZeroDiagonal(usize),

    #[error("coarse matrix is singular: {0}")]
    SingularCoarseMatrix(String),

    #[error("at least two residual entries are needed, got {0}")]
    TooFewIterations(usize),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("symbol is identically zero")]
    IdenticallyZero,

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
