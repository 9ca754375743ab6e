use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate:e})")]
    NotConverged { iterations: usize, estimate: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::NumericalFailure(msg.into())
    }

    /// True for errors that the CLI reports with the numerical-failure exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NumericalFailure(_) | Error::NotConverged { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
