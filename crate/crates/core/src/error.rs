use thiserror::Error;

/// Errors raised by state construction, simulation and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A requested size would exceed a configured cap.
    #[error("resource limit: {what} needs {required} amplitudes, above the cap of N={cap}{hint}")]
    ResourceLimit {
        what: String,
        required: String,
        cap: usize,
        hint: String,
    },

    /// A numerical self-check failed (e.g. an expectation value that should be real is not).
    #[error("internal consistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
