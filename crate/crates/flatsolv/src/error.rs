//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("characteristic polynomial does not split into cyclotomic factors: remainder {0}")]
    CannotFactor(String),
    #[error("characteristic polynomials are not coprime (resultant is zero)")]
    NonCoprime,
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("witness pair is invalid: {0}")]
    InvalidWitness(String),
    #[error("generators {i} and {j} do not commute")]
    NonCommuting { i: usize, j: usize },
    #[error("generator {i} has infinite order")]
    InfiniteOrder { i: usize },
    #[error("generator {i} is not unimodular")]
    NonUnimodular { i: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator index {index} out of range for k={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("fixture error in {file}: {message}")]
    Fixture { file: String, message: String },
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
