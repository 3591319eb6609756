use thiserror::Error;

/// Errors shared by all modules of the lab.
#[derive(Debug, Error)]
pub enum Error {
    /// A domain precondition was violated by the caller.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration or memory cap would be exceeded. Caps are configuration
    /// values; the error names the cap so the caller can raise it deliberately.
    #[error("cap `{cap}` exceeded: need {needed}, cap is {limit}")]
    CapExceeded {
        cap: &'static str,
        needed: u128,
        limit: u128,
    },

    /// An internal structural invariant failed. This indicates a construction
    /// bug rather than bad input.
    #[error("structural error: {0}")]
    Structural(String),

    /// A protocol or partitioner broke its declared contract.
    #[error("contract error: {0}")]
    Contract(String),

    /// Instance/model (de)serialization failure with context.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("json at line {}, column {}: {}", e.line(), e.column(), e))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// Process exit code for the CLI: 2 usage, 3 cap exceeded, 4 verification
    /// failure (the latter is raised by the harness, not this enum).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}
