use thiserror::Error;

/// Errors raised by the matrix kernel, the scalar constants and the check engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("eigen iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive definite (min eigenvalue {min_eig:e})")]
    NotPositiveDefinite { min_eig: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter p must be nonzero")]
    ZeroParameter,
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("invalid map specification: {0}")]
    InvalidSpec(String),
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("vector is not normalized (norm {norm})")]
    UnnormalizedVector { norm: f64 },
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("B - A is numerically singular (min eigenvalue {min_eig:e})")]
    SingularDifference { min_eig: f64 },
    #[error("instance is missing required field `{0}`")]
    MissingField(&'static str),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("malformed instance: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
