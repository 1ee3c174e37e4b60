use thiserror::Error;

/// Everything that can go wrong while building or deciding a pair.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("point does not satisfy the torus constraints")]
    OutsideTorus,

    #[error("objects live on different torus spaces")]
    SpaceMismatch,

    #[error("torus constraints are linearly dependent")]
    DependentConstraints,

    #[error("weight multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("invalid block pattern: {0}")]
    InvalidPattern(String),

    #[error("subspace is not closed under the bracket: {0}")]
    NotBracketClosed(String),

    #[error("torus input rejected: {0}")]
    BadTorus(String),

    #[error("weight spaces do not add up: {0}")]
    WeightDimensionMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("missing extra module V")]
    MissingModule,

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("integer overflow in exact cone arithmetic")]
    Overflow,

    #[error("search space too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
