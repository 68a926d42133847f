use polarmac_core::Error;
use thiserror::Error;

/// Errors of a CLI run, each with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Engine(#[from] Error),

    #[error("every prime failed: {0}")]
    PrimesExhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Engine(Error::NonGeneric(_)) => 3,
            CliError::Engine(Error::BadPrime { .. }) | CliError::PrimesExhausted(_) => 4,
            CliError::Engine(_) => 2,
        }
    }
}
