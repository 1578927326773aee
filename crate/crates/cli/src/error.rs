use thiserror::Error;

/// CLI failures, split by exit code: configuration and domain problems exit
/// with 1, I/O and internal failures with 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Domain(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<qkdsim_core::CoreError> for CliError {
    fn from(e: qkdsim_core::CoreError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<qkdsim_postproc::PostprocError> for CliError {
    fn from(e: qkdsim_postproc::PostprocError) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
