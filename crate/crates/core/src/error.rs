use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table refers to an identifier that does not exist, or has the wrong size.
    #[error("structural error: {0}")]
    Structural(String),

    /// An operation was called on inputs that violate its precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Exhaustive search would exceed the configured node budget.
    #[error("search budget of {limit} candidate extensions exceeded")]
    Budget { limit: u64 },

    /// A cross-check between two independent characterisations disagreed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
