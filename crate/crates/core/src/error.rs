use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Root finding did not converge; `best` holds the last iterate.
    #[error("numeric failure: {message}")]
    Numeric { message: String, best: Vec<Complex64> },

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
