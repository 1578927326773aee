use thiserror::Error;

/// Errors raised by the quantum-information primitives.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tolerance:.0e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
}

pub type CoreResult<T> = Result<T, CoreError>;
