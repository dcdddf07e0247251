use thiserror::Error;

/// Everything that can go wrong while validating inputs or running a solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Empty: distribution has no entries")]
    Empty,
    #[error("NegativeMass: entry {index} is {value}")]
    NegativeMass { index: usize, value: f64 },
    #[error("NotNormalized: entries sum to {sum}")]
    NotNormalized { sum: f64 },
    #[error("NonFinite: entry {index} is not a finite number")]
    NonFinite { index: usize },
    #[error("BadM: need 2 <= m < n, got m = {m}, n = {n}")]
    BadM { m: usize, n: usize },
    #[error("Unreachable: i* requested with p_1 = {p1} < 1/m = {threshold}")]
    Unreachable { p1: f64, threshold: f64 },
    #[error("TooLarge: size {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("BadPartition: {0}")]
    BadPartition(String),
    #[error("ZeroMinimum: smallest probability must be positive")]
    ZeroMinimum,
    #[error("RatioViolated: p_1/p_n = {ratio} exceeds rho = {rho}")]
    RatioViolated { ratio: f64, rho: f64 },
    #[error("BadRho: rho must be >= 1, got {0}")]
    BadRho(f64),
    #[error("MarginalMismatch: {0}")]
    MarginalMismatch(String),
}

impl Error {
    /// Short variant name, used for CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Empty => "Empty",
            Error::NegativeMass { .. } => "NegativeMass",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::NonFinite { .. } => "NonFinite",
            Error::BadM { .. } => "BadM",
            Error::Unreachable { .. } => "Unreachable",
            Error::TooLarge { .. } => "TooLarge",
            Error::BadPartition(_) => "BadPartition",
            Error::ZeroMinimum => "ZeroMinimum",
            Error::RatioViolated { .. } => "RatioViolated",
            Error::BadRho(_) => "BadRho",
            Error::MarginalMismatch(_) => "MarginalMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
