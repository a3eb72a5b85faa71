use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index must be at least {min}, got {got}")]
    IndexTooSmall { min: u64, got: u64 },

    #[error("probability {0} is outside the open interval (0, 1)")]
    ProbabilityOutOfRange(String),

    #[error("closed forms are undefined at p = 1/2")]
    HalfProbability,

    #[error("series denominator must have constant term 1, got {0}")]
    NonUnitConstant(String),

    #[error("coefficient {coeff} at k = {k} (n = {n}) is not divisible by {divisor}")]
    InexactDivision {
        n: usize,
        k: usize,
        coeff: String,
        divisor: u64,
    },

    #[error("brute-force enumeration refused for order {k}; limit is {limit}")]
    TooLarge { k: usize, limit: usize },

    #[error("peak-height and path-height filters disagree at k = {k}, n = {n}: {by_peaks} vs {by_height}")]
    FilterDisagreement {
        k: usize,
        n: usize,
        by_peaks: u64,
        by_height: u64,
    },

    #[error("walk length must be odd, got {0}")]
    EvenWalkLength(u64),

    #[error("invalid walk configuration: {0}")]
    InvalidConfig(String),
}
