use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A hypothesis of the requested computation does not hold.
    #[error("refused ({hypothesis}): {detail}")]
    Refused { hypothesis: String, detail: String },
    #[error("no stabilization within depth {depth}: {what}")]
    Unstable { what: String, depth: usize },
    #[error("enumeration bound exceeded: {0}")]
    Bound(String),
    #[error("cancelled")]
    Cancelled,
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn refused(hypothesis: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Refused {
            hypothesis: hypothesis.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Invalid(_) => 2,
            Error::Refused { .. } | Error::Unstable { .. } | Error::Bound(_) => 3,
            Error::Cancelled => 130,
            Error::Internal(_) => 1,
        }
    }
}
