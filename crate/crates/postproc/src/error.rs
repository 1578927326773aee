use thiserror::Error;

/// Errors raised by the bit-level post-processing pipeline.
#[derive(Debug, Error)]
pub enum PostprocError {
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("insufficient secret key: requested {requested} bits, {available} available")]
    InsufficientKey { requested: usize, available: usize },

    #[error("decoding failure: {0}")]
    DecodingFailure(String),

    #[error("unknown error-correction scheme `{0}`")]
    UnknownScheme(String),

    #[error("invalid round configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Core(#[from] qkdsim_core::CoreError),
}

pub type PostprocResult<T> = Result<T, PostprocError>;
