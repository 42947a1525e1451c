use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain has {0} interior nodes, at least 25 are needed")]
    TooFewNodes(usize),
    #[error("empty domain")]
    EmptyDomain,
    #[error("sparse factorization failed: {0}")]
    Factorization(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("inverse iteration stalled after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("inconsistent optimality inputs: radicand {0:e} is negative")]
    NegativeRadicand(f64),
    #[error("mask file: {0}")]
    MaskFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] plate_core::Error),
}

pub type Result<T, E = GridError> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> GridError {
    GridError::InvalidParameter(msg.into())
}
