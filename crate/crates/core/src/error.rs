use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Validation,
    Guard,
    Resource,
    Degenerate,
    Precondition,
    Internal,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Validation => "validation",
            ErrorKind::Guard => "guard",
            ErrorKind::Resource => "resource",
            ErrorKind::Degenerate => "degenerate",
            ErrorKind::Precondition => "precondition",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow while multiplying monomials")]
    ExponentOverflow,
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("degenerate module: {0}")]
    Degenerate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::UnknownVariable(_) | Error::Validation(_) => ErrorKind::Validation,
            Error::ExponentOverflow | Error::Resource(_) => ErrorKind::Resource,
            Error::Guard(_) => ErrorKind::Guard,
            Error::Degenerate(_) => ErrorKind::Degenerate,
            Error::Precondition(_) => ErrorKind::Precondition,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
