use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at evaluation point {0}")]
    Pole(String),
    #[error("unbalanced word: ladder imbalance {0}")]
    UnbalancedWord(i64),
    #[error("divergent trace: {0}")]
    DivergentTrace(String),
    #[error("kernel dimension is {0}, expected 1")]
    KernelDimension(usize),
    #[error("sector {0:?} is not basic")]
    NonBasicSector(Vec<usize>),
    #[error("slot occupancy mismatch: {0}")]
    OccupancyMismatch(String),
    #[error("overlapping color supports at site {0}")]
    OverlappingSupport(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
