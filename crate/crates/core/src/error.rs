use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid operand: {0}")]
    InvalidOperand(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("operator is not diagonal: {0}")]
    NonDiagonal(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("zero operand: {0}")]
    ZeroOperand(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_same_dim(what: &str, a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Shape(format!("{what}: dimensions {a} and {b} differ")));
    }
    Ok(())
}
