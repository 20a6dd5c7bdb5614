use thiserror::Error;

/// Errors raised by construction, validation and evaluation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has no component above the zero threshold")]
    ZeroVector,
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("rank {rank} outside 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("shape mismatch: expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian: max deviation {0}")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("matrix is not positive semidefinite")]
    NotPositive,
    #[error("dimension {0} is not prime")]
    NotPrime(usize),
    #[error("basis count {count} outside 1..={max}")]
    CountOutOfRange { count: usize, max: usize },
    #[error("index {index} outside 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("basis is not orthonormal: max deviation {0}")]
    NotOrthonormal(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("log base must be finite and > 1, got {0}")]
    InvalidLogBase(f64),
    #[error("probability {0} is negative beyond roundoff")]
    NegativeProbability(f64),
    #[error("probability {0} exceeds 1 beyond roundoff")]
    ProbabilityAboveOne(f64),
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalizedDistribution(f64),
    #[error("purity identity needs a complete set of {expected} bases, got {found}")]
    IncompleteSet { expected: usize, found: usize },
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension {dim} exceeds the optimizer guard {max}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("minimum {min_value} lies below the lower bound {bound_value}")]
    BoundViolation { min_value: f64, bound_value: f64 },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
