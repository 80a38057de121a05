use thiserror::Error;

/// Errors surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] deprit_core::Error),
}

impl CliError {
    /// 0 success, 1 usage, 2 parse, 3 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        use deprit_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Syntax { .. } => 2,
            CliError::Core(E::Usage(_)) => 1,
            CliError::Core(E::Parse { .. }) => 2,
            CliError::Core(E::Domain(_) | E::Integrity(_)) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
