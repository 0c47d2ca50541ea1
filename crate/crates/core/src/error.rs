use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of a formula (non-positive conductivity,
    /// zero offset, too few samples, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Data that cannot be whitened or separated, e.g. a rank-deficient covariance.
    #[error("degenerate data: {0}")]
    Degenerate(String),

    /// Two profiles that should share an offset grid do not.
    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("config error at `{location}`: {message}")]
    Config { location: String, message: String },

    #[error("invalid model or survey: {0}")]
    Validation(ValidationReport),

    #[error("kernel returned a non-finite value at abscissa {abscissa:e}")]
    NonFiniteKernel { abscissa: f64 },

    #[error("hankel filter self-test failed: {0}")]
    FilterSelfTest(String),

    #[error("profile csv, line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            location: location.into(),
            message: message.into(),
        }
    }

    /// True when the error stems from the caller's inputs rather than from the
    /// numerical machinery.
    pub fn is_user_error(&self) -> bool {
        match self {
            Error::Domain(_)
            | Error::Degenerate(_)
            | Error::Alignment(_)
            | Error::Config { .. }
            | Error::Validation(_)
            | Error::Csv { .. } => true,
            Error::NonFiniteKernel { .. } | Error::FilterSelfTest(_) => false,
            Error::Io(e) => matches!(
                e.kind(),
                std::io::ErrorKind::NotFound
                    | std::io::ErrorKind::PermissionDenied
                    | std::io::ErrorKind::InvalidData
            ),
        }
    }
}
