use thiserror::Error;

/// Shape errors from the GF(2) routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("system must have at least one row and one column")]
    Empty,
    #[error("right-hand side has {found} entries, expected {expected}")]
    Mismatch { expected: usize, found: usize },
}

/// Errors from the alpha-stable numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StableError {
    #[error("stability exponent must lie in (0, 2], got {0}")]
    Alpha(f64),
    #[error("skewness must lie in [-1, 1], got {0}")]
    Beta(f64),
    #[error("scale must be positive and finite, got {0}")]
    Gamma(f64),
    #[error("location must be finite, got {0}")]
    Mu(f64),
    #[error("operation requires the symmetric case (beta = 0, mu = 0)")]
    NotSymmetric,
    #[error("numerical inversion did not reach tolerance ({0})")]
    Accuracy(&'static str),
    #[error("hard-decision error probability {0} is outside (0, 1/2)")]
    ErrorProbability(f64),
    #[error("target SNR {0} dB is not reachable with a finite positive scale")]
    SnrOutOfRange(f64),
    #[error("code rate must lie in (0, 1], got {0}")]
    Rate(f64),
}

/// Errors raised while building or using a code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("polynomial degree {degree} does not match n - k = {redundancy}")]
    DegreeMismatch { degree: u32, redundancy: usize },
    #[error("polynomial must have a nonzero constant term")]
    ConstantTerm,
    #[error("polynomial degree must be between 1 and 63, got {0}")]
    PolynomialDegree(u32),
    #[error("invalid dimensions: n = {n}, k = {k}")]
    Dimensions { n: usize, k: usize },
    #[error("block length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("reliability sequence is not a permutation of 0..{0}")]
    Reliability(usize),
    #[error("expected {expected} bits, got {found}")]
    Length { expected: usize, found: usize },
    #[error("construction produced a rank-deficient matrix ({0})")]
    RankDeficient(&'static str),
    #[error("{0} parity checks exceed the supported maximum of 128")]
    TooManyChecks(usize),
}

/// Errors from decoder configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecoderError {
    #[error("query budget must be at least 1")]
    ZeroBudget,
    #[error("erasure threshold must be positive, got {0}")]
    Threshold(f64),
    #[error("this LLR mode needs the channel noise parameters")]
    MissingNoise,
    #[error("block has {found} soft values, code length is {expected}")]
    BlockLength { expected: usize, found: usize },
    #[error(transparent)]
    Stable(#[from] StableError),
}
