use thiserror::Error;

/// Errors produced by the exact-arithmetic layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),

    #[error("term capacity exceeded: {terms} terms over limit {limit}")]
    Capacity { terms: usize, limit: usize },

    #[error("exponent arithmetic overflowed a 64-bit degree")]
    ExponentOverflow,

    #[error("operation requires at least two variables")]
    UnivariateInput,

    #[error("operation requires a univariate input")]
    MultivariateInput,

    #[error("substitution exponent m must be at least 1")]
    BadShift,

    #[error("exponent vector must be nonzero")]
    ZeroExponent,

    #[error("factor multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("inconsistent duplicate bracket for pair ({0}, {1})")]
    InconsistentBracket(String, String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("lower central series does not reach zero: algebra is not nilpotent")]
    NotNilpotent,

    #[error("grading does not validate ({violations} additivity violations)")]
    InvalidGrading { violations: usize },

    #[error("degree vector for label `{0}` is zero")]
    ZeroDegree(String),

    #[error("grading is missing a degree for label `{0}`")]
    MissingDegree(String),

    #[error("matrix is not a derivation (Leibniz identity fails)")]
    NotDerivation,

    #[error("derivation does not map E into W (not in Der(n)_1)")]
    NotInDer1,

    #[error("family parameter n must be at least 1")]
    BadFamilyParameter,

    #[error("cochain dimension {dim} exceeds the configured bound {bound}")]
    DimensionBound { dim: usize, bound: usize },

    #[error("minimal polynomial does not divide (T-1)(T-2)(T-3)")]
    NotDiagonalizable,

    #[error("induction chain is only defined for n > 180 (got {0})")]
    InductionRange(u64),

    #[error("exact fine-grading expansion is limited to n <= 3 (got {0})")]
    FineGradingScale(u64),

    #[error("collapse failed to preserve length (internal error)")]
    LengthNotPreserved,

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
