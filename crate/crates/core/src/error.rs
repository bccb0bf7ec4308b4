use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the estimators, samplers, and dataset builders.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Too few observations for the requested operation.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// Non-finite entries, missing values, or otherwise unusable data.
    #[error("invalid data: {0}")]
    InvalidData(String),

    /// The operation is undefined for the given dimensionality.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Mismatched lengths between columns or series.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An estimator setting is out of range (k, lag, permutation count, ...).
    #[error("config error: {0}")]
    Config(String),

    /// A distribution parameter is outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Domains disagree on their feature schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// The context variable does not define a usable set of domains.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// Prefix the message, keeping the variant. Used to attribute an
    /// estimator failure to the feature that triggered it.
    pub(crate) fn prefixed(self, prefix: &str) -> Error {
        let wrap = |m: String| format!("{prefix}: {m}");
        match self {
            Error::InvalidSample(m) => Error::InvalidSample(wrap(m)),
            Error::InvalidData(m) => Error::InvalidData(wrap(m)),
            Error::Dimension(m) => Error::Dimension(wrap(m)),
            Error::Shape(m) => Error::Shape(wrap(m)),
            Error::Config(m) => Error::Config(wrap(m)),
            Error::Parameter(m) => Error::Parameter(wrap(m)),
            Error::Schema(m) => Error::Schema(wrap(m)),
            Error::Domain(m) => Error::Domain(wrap(m)),
        }
    }
}
