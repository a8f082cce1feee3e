use thiserror::Error;

/// Failures surfaced by the command-line driver.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    #[error("{0}")]
    Input(String),

    /// A check ran and failed; exit code 1.
    #[error("{0}")]
    Check(String),

    #[error(transparent)]
    Core(#[from] qwalk_core::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use qwalk_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Core(E::Validation(_) | E::Shape(_) | E::Domain(_)) => 2,
            CliError::Check(_) | CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
