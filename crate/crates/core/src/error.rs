use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("s must be ≥ 2 (got {0})")]
    RankTooSmall(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected a valence-{expected} tensor, got valence {actual}")]
    WrongValence { expected: usize, actual: usize },
    #[error("valence {requested} exceeds the configured limit {limit}")]
    ValenceLimit { requested: usize, limit: usize },
    #[error("slot {0} is out of range")]
    SlotOutOfRange(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("matrix is singular")]
    Singular,
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("metric determinant is not a nonzero constant: {0}")]
    NonConstantDeterminant(String),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("plane is neither spacelike nor timelike")]
    NotDefinite,
    #[error("basis is not normalized: {0}")]
    NotNormalized(String),
    #[error("rank profile is not that of a nilpotent operator")]
    NotNilpotent,
    #[error("{0}")]
    OutOfRange(String),
    #[error("sampler exhausted after {0} attempts")]
    SamplerExhausted(usize),
    #[error("at least two distinct points are required")]
    TooFewPoints,
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
}
