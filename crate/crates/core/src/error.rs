use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(&'static str),
    #[error("expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("shape error: {0}")]
    Shape(&'static str),
    #[error("matrix is numerically singular (smallest eigenvalue {smallest:e})")]
    Singular { smallest: f64 },
    #[error("enumeration budget exceeded: {required} evaluations > {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
