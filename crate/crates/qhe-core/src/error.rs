//! Error taxonomy shared by all modules.
//!
//! Domain/validation failures (bad arguments, malformed states) are kept
//! distinct from numerical-accuracy failures so callers can map them to
//! different exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QheError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A matrix required to be Hermitian is not, beyond tolerance.
    #[error("matrix not Hermitian: residual {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// A claimed density matrix fails trace or positivity validation.
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// The integrator detected loss of accuracy (e.g. positivity violation).
    #[error("integration accuracy: {0}")]
    IntegrationAccuracy(String),

    /// Heat/work bookkeeping produced an inconsistent combination.
    #[error("metric accounting: {0}")]
    MetricAccounting(String),

    /// The optimizer could not run (empty feasible set, bad budget).
    #[error("optimization: {0}")]
    Optimization(String),
}

impl QheError {
    /// True for failures of numerical accuracy rather than input validation.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            QheError::IntegrationAccuracy(_) | QheError::MetricAccounting(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, QheError>;
