//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by geometry construction, operator assembly, the
/// eigensolver, semiclassical evaluations and persistence.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented domain restriction.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A coefficient series does not converge absolutely.
    #[error("non-summable coefficient tail: {0}")]
    Convergence(String),

    /// The eigensolver was handed a matrix that is not Hermitian within
    /// tolerance.
    #[error("matrix not Hermitian within tolerance: defect {defect:e} > {allowed:e}")]
    NonHermitian { defect: f64, allowed: f64 },

    /// The implicit-shift iteration did not converge within its cap.
    /// Carries the eigenvalues already deflated for diagnostics.
    #[error("eigensolver failed to converge at index {index} after {iterations} iterations ({converged} of {dimension} eigenvalues deflated)")]
    NoConvergence {
        index: usize,
        iterations: usize,
        converged: usize,
        dimension: usize,
    },

    /// A residual or orthogonality certificate exceeded its bound.
    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Persisted data that cannot be parsed back.
    #[error("malformed data: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code classification: 1 validation, 2 numerical, 3 io.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Precondition(_) => 1,
            Error::Convergence(_)
            | Error::NonHermitian { .. }
            | Error::NoConvergence { .. }
            | Error::Certificate(_) => 2,
            Error::Io(_) | Error::Parse(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
