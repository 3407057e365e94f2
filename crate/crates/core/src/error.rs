use thiserror::Error;

/// Errors produced by the workbench operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration would exceed the configured budget.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget { what: &'static str, needed: u64, limit: u64 },

    /// Two cells of a plabic tiling were found to overlap in the plane.
    #[error("embedding violation: {0}")]
    Embedding(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
