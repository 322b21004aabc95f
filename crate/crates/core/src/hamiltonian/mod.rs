//! Pauli-sum Hamiltonians: construction, the text file format, sparse
//! application to statevectors and dense materialization.

mod io;
mod models;
mod pauli;

pub use io::{parse_pauli_file, serialize_pauli};
pub use models::{build_hubbard_chain, build_tfim, spin_orbital, word};
pub use pauli::{
    PauliSum, PauliTerm, DEFAULT_DENSE_QUBITS, DROP_TOL, HERMITIAN_COEFF_TOL, MAX_QUBITS,
};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HamiltonianError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: word length {found} differs from {expected}")]
    InconsistentWordLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("no Pauli terms found")]
    EmptyHamiltonian,
    #[error("invalid Pauli character `{0}`")]
    InvalidPauliChar(char),
    #[error("Hamiltonian needs at least one qubit")]
    NoQubits,
    #[error("{n_qubits} qubits exceeds the supported maximum")]
    TooManyQubits { n_qubits: usize },
    #[error("non-finite coefficient")]
    NonFiniteCoefficient,
    #[error("model needs at least {min} sites, got {n}")]
    TooFewSites { n: usize, min: usize },
    #[error("statevector dimension {found} does not match 2^n = {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{n_qubits} qubits exceeds the dense limit of {limit}")]
    DimensionTooLarge { n_qubits: usize, limit: usize },
    #[error("Hamiltonian is not Hermitian")]
    NotHermitian,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
