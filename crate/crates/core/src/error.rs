use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),
    /// A computation would exceed a configured size bound.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// A checked mathematical claim did not hold.
    #[error("verification failed at {step}: {detail}")]
    Verification { step: String, detail: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn verification(step: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            step: step.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
