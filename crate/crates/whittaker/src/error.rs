use thiserror::Error;

pub type Result<T> = std::result::Result<T, WhittakerError>;

#[derive(Debug, Error)]
pub enum WhittakerError {
    #[error("domain error: {0}")]
    DomainError(String),

    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    #[error("duplicate point {0}")]
    DuplicatePoint(f64),

    #[error(
        "quadrature failed to reach tolerance {tol:.3e}; achieved error estimate {estimate:.3e}"
    )]
    QuadratureFailure { tol: f64, estimate: f64 },

    #[error("parameter out of regime: {0}")]
    ParameterOutOfRegime(String),

    #[error(transparent)]
    Core(#[from] bigwreath_core::Error),
}
