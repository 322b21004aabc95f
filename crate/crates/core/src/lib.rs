//! Krylov quantum diagonalization on exact statevectors.
//!
//! Krylov vectors are generated either by the unitary decomposition
//! `(X + X^H)/(2 eps)` with `X = i e^{-i eps H}`, which approximates `H` to
//! `O(eps^2)`, or by real-time evolution `e^{-i dt H}`. Each iteration solves
//! a regularized generalized eigenproblem `M c = E S c` and records the
//! lowest Ritz value.
//!
//! Everything is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64`.

mod dword;
pub mod geneig;
pub mod hamiltonian;
pub mod krylov;
pub mod lcu;
pub mod linalg;
pub mod scalar;

pub use geneig::{solve_gevp, unit_diagonal_scaling, GevpError, RegularizedSolution};
pub use hamiltonian::{
    build_hubbard_chain, build_tfim, parse_pauli_file, serialize_pauli, HamiltonianError,
    PauliSum, PauliTerm,
};
pub use krylov::{
    assemble_matrices, general_unitary_decomposition_apply, qkud_step, qrte_step, run,
    run_with_cache, ConvergenceRecord, ConvergenceRow, KrylovConfig, KrylovError,
    KrylovSubspace, Method, Termination,
};
pub use lcu::{
    assemble_matrices_lcu, binomial_phase_coeffs, inject_shot_noise, measure_primitive, run_lcu,
    LcuError, LcuRunOptions, Observable, PrimitiveKey, PrimitiveTable,
};
pub use linalg::{hermitian_eigendecompose, inner, HermitianMatrix, LinalgError, SpectralCache, Statevector};
pub use scalar::{Real, C};

pub type Complex64 = C<f64>;
pub type Statevector64 = Statevector<f64>;
pub type PauliSum64 = PauliSum<f64>;
pub type PauliTerm64 = PauliTerm<f64>;
pub type SpectralCache64 = SpectralCache<f64>;
pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type KrylovConfig64 = KrylovConfig<f64>;
pub type ConvergenceRecord64 = ConvergenceRecord<f64>;
pub type RegularizedSolution64 = RegularizedSolution<f64>;
pub type PrimitiveTable64 = PrimitiveTable<f64>;
