use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("invalid rational token {0:?}")]
    InvalidRational(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cut has an all-zero left-hand side")]
    ZeroCut,
    #[error("no cut available: {0}")]
    NoCutAvailable(String),
    #[error("no mixed-integer point exists: {0}")]
    IntegerInfeasible(String),
    #[error("no disjunction derivable: {0}")]
    NoDisjunction(String),
    #[error("objective cut unavailable: no extreme ray carries the objective row")]
    ObjectiveCutUnavailable,
    #[error("instance is unbounded")]
    Unbounded,
    #[error("unknown builtin instance {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
