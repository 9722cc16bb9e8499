use thiserror::Error;

/// Errors raised anywhere in the hash / graph / chain pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid prime {0}: expected a prime p > 3")]
    InvalidPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different field contexts")]
    ContextMismatch,

    #[error("cannot parse field element {0:?}")]
    ParseElement(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("cubic has a repeated root (zero discriminant)")]
    RepeatedRoot,

    #[error("cubic splits into only {found} distinct roots over GF(p^2)")]
    NotSplit { found: usize },

    #[error("singular curve: discriminant vanishes")]
    SingularCurve,

    #[error("x = {0} is not a root of the domain cubic")]
    NotAKernelRoot(String),

    #[error("degenerate codomain: Velu curve has zero discriminant")]
    DegenerateCodomain,

    #[error("dual kernel mismatch: the two non-kernel roots map to different points")]
    DualKernelMismatch,

    #[error("no supersingular curve found for p = {0}")]
    SearchExhausted(u64),

    #[error("graph integrity violated: {0}")]
    GraphIntegrity(String),

    #[error("pair-level aggregation conflict: {0}")]
    Aggregation(String),

    #[error("eigenvalue-1 eigenspace has dimension {dimension}, expected 1")]
    AmbiguousEigenspace { dimension: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
