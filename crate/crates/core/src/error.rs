use thiserror::Error;

/// Errors produced by the numeric modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("non-finite sample in {context}")]
    NonFinite { context: String },
    #[error("non-finite values appeared at step {step}")]
    NonFiniteAtStep { step: usize },
    #[error("time step {dt:.6e} exceeds stability bound {bound:.6e}")]
    TimestepTooLarge { dt: f64, bound: f64 },
    #[error("instability at step {step}: energy grew {ratio:.3e}x, dominant mode {mode:?}")]
    Instability {
        step: usize,
        ratio: f64,
        mode: Vec<usize>,
    },
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("field is fully masked; nothing to evaluate")]
    FullyMasked,
    #[error("trajectory seed {index} lies on the nodal mask")]
    SeedOnMask { index: usize },
    #[error("degenerate metric: {count} non-invertible points on chart")]
    DegenerateMetric { count: usize },
    #[error("super-critical field configuration (radicand {radicand:.6e} < 0)")]
    SuperCritical { radicand: f64 },
    #[error("quadrature did not converge: error estimate {estimate:.3e} exceeds tolerance {tol:.3e}")]
    QuadratureNoConvergence { estimate: f64, tol: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
