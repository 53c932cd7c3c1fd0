use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms")]
    NonConvergence { terms: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate mode: m = k = 0 has zero frequency")]
    DegenerateMode,

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("step limit of {0} exceeded")]
    StepLimit(usize),

    #[error("step size underflow at eta = {eta}: tolerance cannot be met")]
    ToleranceFailure { eta: f64 },

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("bracketing failure: {0}")]
    Bracketing(String),

    #[error("no interior maximum: {0}")]
    NoInteriorMaximum(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
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
        Error::Config(e.to_string())
    }
}
