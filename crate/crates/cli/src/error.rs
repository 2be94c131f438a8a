use thiserror::Error;
use vesiflow_core::Error as CoreError;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("run aborted: {0}")]
    Tubular(CoreError),

    #[error("verification failed: {failed} of {total} checks did not pass")]
    VerifyFailed { failed: usize, total: usize },

    #[error("{0}")]
    Core(CoreError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Tubular(_) => 3,
            Self::VerifyFailed { .. } => 4,
            Self::Core(_) | Self::Io(_) | Self::Csv(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TubularViolation { .. } => Self::Tubular(e),
            CoreError::Angle { .. } => Self::Config(e.to_string()),
            other => Self::Core(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
