use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix dimension must be even for quaternionic structure, got {0}")]
    OddDimension(usize),
    #[error("input does not have the required block shape: {0}")]
    BlockShape(String),
    #[error("eigensolver failed to converge")]
    EigenFailure,
    #[error("tolerance failure: {0}")]
    ToleranceFailure(String),
    #[error("eigenvalue clustering is ambiguous: {0}")]
    AmbiguousCluster(String),
    #[error("no spectral gap between the selected cluster and its complement")]
    NoSpectralGap,
    #[error("invalid stratum label: {0}")]
    InvalidLabel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("random-element splitting failed after {0} retries")]
    SplitRetriesExhausted(usize),
    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("value {0} is not an eigenvalue of the input within the clustering radius")]
    NotAnEigenvalue(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
