use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments that violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// The exact solver refuses graphs above its vertex limit.
    #[error("instance too large: n = {n} exceeds the exact-solver limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("malformed results file, bad rows at lines {lines:?}")]
    MalformedResults { lines: Vec<usize> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse { .. } | Error::Domain(_) => 2,
            Error::InstanceTooLarge { .. } => 3,
            Error::MalformedResults { .. } | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 4,
        }
    }
}
