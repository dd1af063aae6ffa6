//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by constructors, frame builders, and verification drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// Sphere dimension below 1 (points on S^0 are not supported).
    #[error("sphere dimension must be at least 1, got {0}")]
    DimensionTooSmall(usize),

    /// Input vector is too far from unit norm to accept as a sphere point.
    #[error("vector norm {norm} is farther than {tol} from 1; normalize explicitly first")]
    NotUnit { norm: f64, tol: f64 },

    /// Cannot normalize the zero vector (or a vector with non-finite entries).
    #[error("cannot normalize: vector norm is zero or not finite")]
    ZeroVector,

    /// 1-based index outside its valid range.
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// Operation requires an odd sphere dimension.
    #[error("sphere dimension n must be odd, got {0}")]
    ParityRequired(usize),

    /// Operation requires a specific sphere dimension.
    #[error("operation requires n = {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Vector lengths disagree with the ambient dimensions in play.
    #[error("ambient dimension mismatch: {0}")]
    AmbientMismatch(String),

    /// A vector that must be tangent at the base point is not.
    #[error("vector is not tangent at the base point (residual {residual:e} > {tol:e})")]
    NotTangent { residual: f64, tol: f64 },

    /// A frame that must be orthonormal is not.
    #[error("frame is not orthonormal (max |Gram - I| = {residual:e} > {tol:e})")]
    NotOrthonormal { residual: f64, tol: f64 },

    /// Supplied vectors do not span: Gram determinant below threshold.
    #[error("supplied fields are rank-deficient (|det Gram| = {det:e} < {tol:e})")]
    RankDeficient { det: f64, tol: f64 },

    /// Not a permutation of 1..=len.
    #[error("invalid permutation of 1..={len}")]
    InvalidPermutation { len: usize },

    /// A vector claimed to lie in the image of the product embedding does not.
    #[error("vector is not in the range of the embedding: {0}")]
    NotInRange(String),

    /// Symbolic verification would exceed the configured size budget.
    #[error(
        "symbolic budget exceeded: {estimate}; limit is total dimension m+n <= {limit} \
         (set SPHEREPAR_BUDGET to raise)"
    )]
    BudgetExceeded { estimate: String, limit: usize },

    /// Invalid run configuration (bad flag combination, unsupported frame/parity pair).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Malformed point input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// I/O failure reading inputs or writing reports.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
