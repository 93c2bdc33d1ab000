use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad graph, mismatched orders, invalid parameters).
    #[error("invalid input: {0}")]
    Input(String),

    /// A request exceeds a configured size limit.
    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// A numerical routine failed to meet its accuracy contract.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A pre- or post-condition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A text format could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
