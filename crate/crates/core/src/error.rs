use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (max deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("invalid dimension {0}: su(N) needs N >= 2")]
    InvalidDimension(usize),
    #[error("operator is not density-like: {0}")]
    NotDensityLike(String),
    #[error("reconstructed operator has eigenvalue {min_eigenvalue:.3e} below zero")]
    NotPositive { min_eigenvalue: f64 },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("rank tolerance {tol_rank:.3e} discards probability mass {discarded:.3e}")]
    RankToleranceFailure { tol_rank: f64, discarded: f64 },
    #[error("logarithm of zero probability at index {0}")]
    DegenerateLog(usize),
    #[error("spectrum rank {0} is too small, need at least 2")]
    RankTooSmall(usize),
    #[error("component fluctuation {0} outside [0, 2)")]
    OutOfRange(f64),
    #[error("filling {0} outside (0, 1)")]
    InvalidFilling(f64),
    #[error("invalid block size {0}")]
    InvalidBlockSize(usize),
    #[error("occupation {0} outside [0, 1] beyond clamp tolerance")]
    SpectrumOutOfRange(f64),
    #[error("block length {length} exceeds the limit {limit}")]
    BlockTooLong { length: usize, limit: usize },
}
