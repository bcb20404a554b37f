use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("extension degree must be at least 1")]
    InvalidDegree,

    #[error("field {0} does not fit in 64-bit element indices")]
    FieldTooLarge(String),

    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero is not a valid argument to {0}")]
    ZeroArgument(&'static str),

    #[error("{0} is not a square in {1}")]
    NotASquare(String, String),

    #[error("no embedding of {0} into {1}")]
    NoEmbedding(String, String),

    #[error("malformed encoding: {0}")]
    Parse(String),

    #[error("zero polynomial passed to {0}")]
    ZeroPolynomial(&'static str),

    #[error("inner function of a composition is constant")]
    ConstantInner,

    #[error("rational function is constant")]
    ConstantFunction,

    #[error("rational function is inseparable")]
    Inseparable,

    #[error("parameter hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("group construction failed: {0}")]
    Group(String),

    #[error("{0} critical points could not be located in the probe fields")]
    UnresolvedCriticalPoints(usize),

    #[error("unsupported place: {0}")]
    UnknownPlace(String),
}
