//! Dense complex linear algebra: statevectors, Hermitian eigendecomposition and
//! exact spectral functions of a Hamiltonian.

mod hermitian;
mod spectral;
mod statevector;

pub use hermitian::{hermitize, HermitianMatrix, DENSE_DIM_LIMIT, HERMITIAN_TOL};
pub use spectral::{hermitian_eigendecompose, SpectralCache};
pub use statevector::{inner, Statevector};

pub(crate) use statevector::dot_conj;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be positive")]
    EmptyDimension,
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("dimension {dim} exceeds the dense limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("eigensolver did not converge for eigenvalue {index}")]
    ConvergenceFailure { index: usize },
    #[error("non-finite value")]
    NonFinite,
    #[error("spectral function is not finite at eigenvalue {eigenvalue}")]
    NonFiniteFunction { eigenvalue: f64 },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
}
