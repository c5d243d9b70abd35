use mixmult_core::{Error, ErrorKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Core(e) => e.kind().as_str(),
        }
    }

    /// 1 for exhausted guards and resources, 2 for rejected input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Guard | ErrorKind::Resource | ErrorKind::Internal => 1,
                ErrorKind::Validation | ErrorKind::Precondition | ErrorKind::Degenerate => 2,
            },
            CliError::Io { .. } => 1,
            CliError::Parse { .. } | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
