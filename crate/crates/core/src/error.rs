use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A mathematically invalid argument, e.g. asking for the parameter
    /// of a truncated Poisson distribution with mean `<= 1`.
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed argument such as a NaN or an out-of-range probability.
    #[error("invalid input: {0}")]
    Input(String),

    /// A rejection sampler gave up.
    #[error("gave up after {attempts} attempts ({what}; estimated acceptance probability {acceptance:.3e})")]
    AttemptsExhausted {
        what: &'static str,
        attempts: u64,
        acceptance: f64,
    },

    /// An exhaustive computation was asked to exceed its size cap.
    #[error("instance too large: {0}")]
    Size(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input: {0}")]
    Empty(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
