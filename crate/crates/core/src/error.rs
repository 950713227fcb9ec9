use thiserror::Error;

/// Errors produced by the transform, solver and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("near-zero frequency |z| = {0:e}: no finite closed form")]
    NearZeroFrequency(f64),

    #[error("evaluation point within {distance:e} of a pole")]
    PoleProximity { distance: f64 },

    #[error("invalid window [{a}, {b})")]
    InvalidWindow { a: f64, b: f64 },

    #[error("SVD did not converge after {sweeps} sweeps")]
    SvdNonConvergence { sweeps: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("all {attempts} randomized attempts failed (no retained singular direction)")]
    AllAttemptsFailed { attempts: usize },

    #[error("insufficient zeros: need r > {min_r}")]
    InsufficientZeros { min_r: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Io,
    Numeric,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_) | Error::InvalidWindow { .. } | Error::InsufficientZeros { .. } => ErrorKind::Usage,
            Error::Io { .. } | Error::Parse(_) => ErrorKind::Io,
            _ => ErrorKind::Numeric,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
