use thiserror::Error;

/// Errors raised by the fitting pipeline and its building blocks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A node violates the ordering or range requirements of a [`NodeSet`](crate::NodeSet).
    #[error("invalid node at index {index}: {reason}")]
    InvalidNode { index: usize, reason: String },

    #[error("node set is empty")]
    EmptyNodes,

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Neville elimination hit a zero pivot above a nonzero entry; a row exchange
    /// would be required. Indices are 0-based.
    #[error("zero pivot at ({row}, {col}) requires a row exchange")]
    ZeroPivot { row: usize, col: usize },

    /// A bidiagonal factorization entry that must be positive is not.
    #[error("bidiagonal entry ({row}, {col}) = {value} is not positive")]
    NotTotallyPositive { row: usize, col: usize, value: f64 },

    #[error("singular triangular factor: diagonal entry {index} is zero")]
    Singular { index: usize },

    #[error("normal equations are not numerically positive definite")]
    Conditioning,
}

pub type Result<T> = std::result::Result<T, Error>;
