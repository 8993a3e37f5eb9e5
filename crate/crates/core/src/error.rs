use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator vanished while evaluating a formula.
    #[error("pole: {denominator} = 0")]
    Pole { denominator: String },
    /// A stated precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("cannot parse '{input}': {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(denominator: impl Into<String>) -> Self {
        Error::Pole {
            denominator: denominator.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
