use thiserror::Error;

use crate::scalar::Model;

/// Everything the engine can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("model mismatch: {0} vs {1}")]
    ModelMismatch(Model, Model),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("invalid scalar literal `{text}`: {reason}")]
    InvalidLiteral { text: String, reason: String },
    #[error("invalid model `{0}`")]
    InvalidModel(String),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("line direction is the zero vector")]
    ZeroDirection,
    #[error("lines do not meet in a single point")]
    NoIntersection,
    #[error("point is not on the line")]
    OffLine,
    #[error("auxiliary point lies on the working line")]
    AuxOnLine,
    #[error("point is the zero point O")]
    ZeroPoint,
    #[error("zero denominator: the second point is O")]
    ZeroDenominator,
    #[error("points B and C coincide")]
    CoincidentBC,
    #[error("scope too large: {0}")]
    ScopeTooLarge(String),
    #[error("malformed configuration: {0}")]
    MalformedConfig(String),
    #[error("generator exhausted after {0} attempts")]
    GeneratorExhausted(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("projection undefined: transported line misses the target")]
    ProjectionUndefined,
    #[error("degenerate image: {0}")]
    DegenerateImage(String),
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
