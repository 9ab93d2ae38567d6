use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input is outside the domain of the operation.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A named hypothesis of a bound or replay does not hold for the input.
    #[error("hypothesis `{name}` violated: {detail}")]
    Hypothesis { name: String, detail: String },

    /// The smallest degree is below the certified threshold `A(e)`.
    #[error("degree threshold not met: {detail}")]
    Threshold { detail: String },

    /// Prime selection ran out of candidates. Never expected on valid input.
    #[error("no unused prime in ({lower}, {upper}] for degree index {index}")]
    Exhausted {
        index: usize,
        lower: String,
        upper: String,
    },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn hypothesis(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name: name.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
