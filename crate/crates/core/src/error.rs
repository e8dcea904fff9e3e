use thiserror::Error;

/// Errors raised by samplers, exact evaluators and numerical kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |M - M^H| = {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("{0}")]
    Distributional(String),

    #[error("polynomial error: {0}")]
    Polynomial(String),

    #[error("bures rejection sampler gave up after {rejections} consecutive rejections at n = {n}; use the MCMC sampler for this size")]
    RejectionExhausted { n: usize, rejections: u64 },

    #[error("newton iteration did not converge after {steps} steps (last residual {residual:e})")]
    NoConvergence { steps: usize, residual: f64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
