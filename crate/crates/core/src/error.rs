use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("zero polynomial is not allowed here: {0}")]
    ZeroInput(&'static str),
    #[error("the unit ideal is not allowed here: {0}")]
    UnitIdeal(&'static str),
    #[error("not a prime ideal: {0}")]
    NotPrimeIdeal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("outside the supported envelope: {0}")]
    Capability(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
