use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Inconsistent grids, channel counts or parameter lists.
    #[error("configuration error: {0}")]
    Config(String),

    /// A parameter is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// One-sided extrapolation hit a vanishing denominator; the jump
    /// condition is vacuous for this vector.
    #[error("degenerate jump: |limit from below| = {denom:.3e} is under the threshold {threshold:.3e}")]
    DegenerateJump { denom: f64, threshold: f64 },

    /// Adaptive stepping could not meet the tolerance.
    #[error("integration failure at t = {t:.6e}: step size {step:.3e} underflowed (tolerance {tol:.3e})")]
    IntegrationFailure { t: f64, step: f64, tol: f64 },

    /// Particle-number truncation outside the supported range.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A vector handed to the generator violates the jump condition.
    #[error("domain violation: boundary-condition residual {residual:.3e} exceeds {tol:.3e}")]
    DomainViolation { residual: f64, tol: f64 },

    /// Operation requires a configuration this build does not support.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
