use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} too large (must be < 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("ring context mismatch")]
    RingMismatch,
    #[error("ambient free module mismatch: rank {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("matrix entry ({0},{1}) has degree {2}, expected {3}")]
    DegreeMismatch(usize, usize, i64, i64),
    #[error("operation undefined for the zero module")]
    ZeroModule,
    #[error("negative power {0}")]
    NegativePower(i64),
    #[error("module is not finite length")]
    NotFiniteLength,
    #[error("ideal is not primary to the irrelevant maximal ideal")]
    NotMPrimary,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("superficial search exhausted {trials} trials; failing target index {target}")]
    SuperficialSearchFailed { trials: usize, target: usize },
    #[error("unsupported module class: {0}")]
    UnsupportedClass(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid construction: {0}")]
    Construction(String),
}
