use thiserror::Error;

/// Crate-wide error type. Preconditions of public operations are checked and
/// reported through these variants rather than panics.
#[derive(Debug, Error)]
pub enum Error {
    /// Basis parameters violate a constructor precondition.
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    /// A configuration does not belong to the basis it was used with.
    #[error("configuration not in basis: {0}")]
    ConfigNotInBasis(String),

    /// A linear index is outside `0..dimension`.
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Coupling or lattice parameters violate a builder precondition.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Vector/operator dimensions do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The iterative eigensolver exhausted its iteration budget.
    #[error(
        "eigensolver did not converge in {max_iter} iterations: best residual {best_residual:.3e} > tol {tol:.3e}"
    )]
    NotConverged {
        max_iter: usize,
        best_residual: f64,
        tol: f64,
    },

    /// The dense solver was asked for a dimension above its cap.
    #[error("dense solve limited to dimension {limit}, got {dim}")]
    DenseTooLarge { dim: usize, limit: usize },

    /// A function argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
