use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one failure class
/// of the command-line front end (usage, domain, consistency).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {got}: need at least {min}")]
    InvalidDimension { got: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input point is not on the manifold the operation expects.
    #[error("domain error: {0}")]
    Domain(String),

    /// Output of an internal computation failed a self-check.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("coefficient overflow guard: j = {j} exceeds {max}")]
    OverflowGuard { j: u32, max: u32 },

    /// Chosen base value was hit exactly by a preimage; retry with another.
    #[error("tau = {0} is not a regular value")]
    NonRegularValue(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
