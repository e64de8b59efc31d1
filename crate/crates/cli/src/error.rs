use thiserror::Error;

/// Failure modes of a batch run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid job: {0}")]
    Job(String),
    #[error("cannot read job: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] vosa_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(vosa_core::Error::CutoffExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
