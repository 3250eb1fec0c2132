use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("dimension {dim} exceeds the available range {max}")]
    DimensionOutOfRange { dim: u32, max: u32 },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series does not start with x: leading coefficient is {0}")]
    NotUnitLeading(String),

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("{value} is not integral at {prime}")]
    NotIntegralAt { prime: u32, value: String },

    #[error("prime field F_{0} is not supported")]
    UnsupportedPrime(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
