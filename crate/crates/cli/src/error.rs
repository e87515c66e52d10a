use thiserror::Error;

/// Failures that abort a command before a report is produced.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] triality_core::Error),
}

impl CliError {
    /// Exit status: 2 for usage problems, 3 for truncation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use triality_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(E::Truncation { .. } | E::OutOfRange { .. }) => 3,
            CliError::Core(E::Parse(_) | E::InvalidParameter(_) | E::UnknownLabel(_) | E::Lattice(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
