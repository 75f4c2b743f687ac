use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("parse error at position {position}: {message} (token `{token}`)")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("element {elem} does not belong to {group}: {reason}")]
    InvalidElement {
        elem: String,
        group: String,
        reason: String,
    },

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("invalid endomorphism: {0}")]
    InvalidMap(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("not positive-definite: {0}")]
    NotPositiveDefinite(String),

    #[error("subgroup closure check failed: {0}")]
    ClosureFailure(String),

    #[error("no decomposition: {0}")]
    NoDecomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("transcript step `{step}` failed with residual {residual:e}")]
    TranscriptStep { step: String, residual: f64 },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("non-integrable characteristic function: {0}")]
    NonIntegrable(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            position: e.column(),
            token: String::new(),
            message: e.to_string(),
        }
    }
}
