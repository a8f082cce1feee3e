use thiserror::Error;

/// Errors raised by the quaternionic walk toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("eigensolver did not converge after {iterations} iterations (matrix {fingerprint})")]
    NoConvergence { iterations: usize, fingerprint: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate eigenvector lift: |e| = {norm:.3e} against |Lv| = {reference:.3e}")]
    DegenerateLift { norm: f64, reference: f64 },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
