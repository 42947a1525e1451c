use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no sign change in search window: {0}")]
    NoBracket(String),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("no solution exists: {0}")]
    NonExistent(String),
    #[error("criterion is inconclusive: {0}")]
    CriterionFails(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
