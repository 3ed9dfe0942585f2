use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("operation requires truncation order >= {required}, got {actual}")]
    OrderTooLow { required: usize, actual: usize },
    #[error("non-integer or negative power of a series with constant term != 1")]
    NonUnitBase,
    #[error("inner series of a composition must have zero constant term")]
    NonZeroInnerConstant,
    #[error("series has nonzero constant term and is not divisible by z")]
    NotDivisibleByZ,
    #[error("series is not normalized (need c0 = 0, c1 = 1)")]
    NotNormalized,
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("exact backend cannot take floating exponent {0}")]
    InexactExponent(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaberError {
    #[error("part count m = {m} must satisfy 1 <= m <= n = {n}")]
    PartCount { n: usize, m: usize },
    #[error("Bell variables must start with a_1 = 1")]
    LeadingVariable,
    #[error("need {needed} Bell variables, got {got}")]
    MissingVariables { needed: usize, got: usize },
    #[error("Faber exponent p must be nonzero")]
    ZeroExponent,
    #[error("coefficient index {n} needs a series of order >= {needed}, got {order}")]
    IndexBeyondOrder { n: usize, needed: usize, order: usize },
    #[error("explicit expansion terms are only complete for 2 <= n <= 6, got n = {0}")]
    ExpansionRange(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Violation of the class parameter ranges.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("lambda = {0} violates lambda >= 1")]
    Lambda(String),
    #[error("mu = {0} violates mu >= 0")]
    Mu(String),
    #[error("delta = {0} violates delta >= 0")]
    Delta(String),
    #[error("alpha = {0} violates 0 <= alpha < 1")]
    Alpha(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("functional index must be >= 1")]
    ZeroIndex,
    #[error("F_{index} needs a series of order >= {needed}, got {order}")]
    IndexBeyondOrder { index: usize, needed: usize, order: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Params(#[from] ParamError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("the gap-series bound holds for n >= 4 only (got n = {0}); use the a2/a3 bounds for n = 2, 3")]
    GapIndex(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MembershipError {
    #[error("sampling radii must be strictly increasing and inside (0, 1)")]
    Radii,
    #[error("samples per circle must be >= 3")]
    Samples,
    #[error("tolerance must be positive and finite")]
    Tolerance,
    #[error("inverse radius cap must lie in (0, 1)")]
    InverseCap,
    #[error("disk preset radius must lie in (0, 1], got {0}")]
    DiskRadius(f64),
    #[error("alpha must lie in [0, 1), got {0}")]
    Alpha(f64),
    #[error("Phi given by raw coefficients has no closed-form inverse")]
    NoClosedFormInverse,
    #[error("malformed Phi specification `{0}` (expected halfplane:a, disk:r or coeffs:c1,c2,...)")]
    PhiSyntax(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Faber(#[from] FaberError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}
