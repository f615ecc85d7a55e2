use thiserror::Error;

/// Failures reported by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FslpError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular matrix (pivot {pivot:e} at column {column})")]
    SingularMatrix { column: usize, pivot: f64 },
    #[error("mass matrix is singular")]
    SingularMass,
    #[error("QR iteration did not converge; {deflated} of {total} eigenvalues deflated")]
    NoConvergence { deflated: usize, total: usize },
    #[error("inverse iteration made no progress from shift {re}+{im}i")]
    ShiftTooFar { re: f64, im: f64 },
    #[error("dense solve of size {0} exceeds capacity {1}")]
    Capacity(usize, usize),
    #[error("Mittag-Leffler evaluation overflows at |z| = {0:e}")]
    Overflow(f64),
    #[error("Newton iteration diverged near {re}+{im}i")]
    NewtonDiverged { re: f64, im: f64 },
    #[error("ambiguous eigenvalue matching: candidates {0} and {1} are indistinguishable")]
    MatchingAmbiguous(String, String),
    #[error("eigenvalue tracking lost at alpha = {alpha}: jump {jump:e} exceeds {limit:e}")]
    TrackingLost { alpha: f64, jump: f64, limit: f64 },
    #[error("quadrature did not reach tolerance (estimate {0:e})")]
    Quadrature(f64),
}

pub type Result<T> = std::result::Result<T, FslpError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FslpError::InvalidInput(msg.into()))
}
