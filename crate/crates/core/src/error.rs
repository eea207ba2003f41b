use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (bad vertex, overlapping sets, bad file).
    #[error("input error: {0}")]
    Input(String),

    /// The requested exact computation is outside the configured limits.
    #[error("capability error: {reason}")]
    Capability {
        reason: String,
        /// Best lower/upper bounds known when the limit was hit, if any.
        bounds: Option<(usize, usize)>,
    },

    /// A transformation was asked to act on a decomposition it cannot handle.
    #[error("structural error: {0}")]
    Structural(String),

    /// Argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn capability(reason: impl Into<String>) -> Self {
        Error::Capability {
            reason: reason.into(),
            bounds: None,
        }
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
