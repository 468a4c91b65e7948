use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("modulus level mismatch: 2^{left} vs 2^{right}")]
    LevelMismatch { left: u32, right: u32 },
    #[error("unsupported modulus level {0} (expected 1..={max})", max = crate::ring::MAX_LEVEL)]
    InvalidLevel(u32),
    #[error("matrix is not invertible modulo 2^{level}")]
    Singular { level: u32 },
    #[error("order census is not that of an abelian 2-group: {0}")]
    InconsistentCensus(String),
    #[error("generators close to a group of order {found}, expected {expected}")]
    IncompleteGenerators { expected: u64, found: u64 },
    #[error("element cap of {cap} exceeded")]
    Capacity { cap: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("braid word is not pure")]
    NotPure,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("tower error: {0}")]
    Tower(String),
    #[error("root branch could not be resolved after {rounds} precision rounds")]
    BranchUndecidable { rounds: u32 },
}
