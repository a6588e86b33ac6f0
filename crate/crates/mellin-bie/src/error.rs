use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Every variant belongs to one of three families (validation, numerical,
/// I/O) which the CLI maps to exit codes 2, 3 and 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("kernel has a pole at 0")]
    PoleAtZero,
    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),
    #[error("trace does not exist: s = {s} must exceed 1/p = {inv_p}")]
    TraceNonexistence { s: f64, inv_p: f64 },
    #[error("invalid config: {0}")]
    Config(String),

    #[error("singular sample at {0}")]
    SingularSample(String),
    #[error("not elliptic: min |det| = {min_abs:e} at {location}")]
    NotElliptic { min_abs: f64, location: String },
    #[error("winding resolution: {0}")]
    Resolution(String),
    #[error("symbol vanishes on the Mellin line beta = {beta}: {hint}")]
    NonEllipticLine { beta: f64, hint: String },
    #[error("ill-conditioned collocation matrix: condition estimate {0:e}")]
    Conditioning(f64),
    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Coarse error family, used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numerical,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidArgument(_)
            | Error::Domain(_)
            | Error::PoleAtZero
            | Error::UnsupportedBranch(_)
            | Error::TraceNonexistence { .. }
            | Error::Config(_) => ErrorKind::Validation,
            Error::SingularSample(_)
            | Error::NotElliptic { .. }
            | Error::Resolution(_)
            | Error::NonEllipticLine { .. }
            | Error::Conditioning(_)
            | Error::Evaluation(_) => ErrorKind::Numerical,
            Error::Io(_) | Error::Csv(_) => ErrorKind::Io,
            Error::Json(e) => {
                if e.is_io() {
                    ErrorKind::Io
                } else {
                    ErrorKind::Validation
                }
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
