use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain where a function is defined or implemented.
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    /// Result not representable (overflow/underflow of intermediate quantities).
    #[error("range error in {func}: {msg}")]
    Range { func: &'static str, msg: String },

    /// Requested accuracy not reached; the best estimate is carried along.
    #[error("accuracy not reached in {what}: estimate {estimate} with error {error:e}, requested {requested:e}")]
    Accuracy {
        what: String,
        estimate: Complex64,
        error: f64,
        requested: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// Parameter regime where the model or a route is not valid.
    #[error("regime error: {0}")]
    Regime(String),
}

impl Error {
    pub fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { func, msg: msg.into() }
    }

    pub fn range(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Range { func, msg: msg.into() }
    }

    /// Short machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Range { .. } => "range",
            Error::Accuracy { .. } => "accuracy",
            Error::Config(_) => "config",
            Error::Regime(_) => "regime",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
