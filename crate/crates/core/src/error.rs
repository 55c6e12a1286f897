use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The inputs are well defined but outside the range where the model
    /// or asymptotic form applies.
    #[error("validity error: {0}")]
    Validity(String),

    /// Quadrature or series failed to reach its tolerance.
    #[error("numeric failure: {message} (partial estimate {partial:e})")]
    NumericFailure { message: String, partial: f64 },

    #[error("unknown metal `{0}`")]
    UnknownMetal(String),

    #[error("material file: {0}")]
    MaterialFile(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validity(msg: impl Into<String>) -> Self {
        Error::Validity(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, partial: f64) -> Self {
        Error::NumericFailure {
            message: msg.into(),
            partial,
        }
    }
}
