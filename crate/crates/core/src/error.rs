use thiserror::Error;

/// Errors raised by the special-function kernel, the physical model and the
/// verification machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
