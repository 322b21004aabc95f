//! Krylov subspaces built either from the unitary decomposition
//! `(X + X^H)/(2 eps)` (QKUD) or from real-time evolution `e^{-i dt H}` (QRTE),
//! and the iterative Rayleigh-Ritz loop on top of them.

mod general;
mod record;
mod steps;
mod subspace;

pub use general::{general_unitary_decomposition_apply, UnitaryDecomposition};
pub use record::{
    ConvergenceMonitor, ConvergenceRecord, ConvergenceRow, Termination, STAGNATION_LIMIT,
};
pub use steps::{qkud_step, qrte_step};
pub use subspace::{assemble_matrices, KrylovSubspace};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geneig::{solve_gevp, GevpError, DEFAULT_GEVP_THRESHOLD};
use crate::hamiltonian::{HamiltonianError, PauliSum};
use crate::linalg::{hermitian_eigendecompose, LinalgError, SpectralCache, Statevector};
use crate::scalar::{lit, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KrylovError {
    #[error("epsilon must be positive and finite")]
    InvalidEpsilon,
    #[error("time step must be positive and finite")]
    InvalidTimeStep,
    #[error("max_iter must be at least 1")]
    InvalidMaxIter,
    #[error("stop_delta must be non-negative")]
    InvalidStopDelta,
    #[error("Hamiltonian is not Hermitian")]
    NonHermitianHamiltonian,
    #[error("initial state is the zero vector")]
    ZeroInitialState,
    #[error("no vectors to assemble")]
    EmptyVectorList,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generalized eigenproblem failed: {0}")]
    Gevp(#[from] GevpError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Qkud,
    Qrte,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Qkud => "qkud",
            Method::Qrte => "qrte",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "qkud" => Ok(Method::Qkud),
            "qrte" => Ok(Method::Qrte),
            _ => Err(format!("unknown method {s:?} (expected qkud or qrte)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrylovConfig<T: Real> {
    pub method: Method,
    /// Error parameter of the unitary decomposition (QKUD only).
    pub epsilon: T,
    /// Evolution time step (QRTE only).
    pub delta_t: T,
    pub max_iter: usize,
    /// Stop once `|E_n - E_{n-1}| < stop_delta`.
    pub stop_delta: T,
    /// Relative cutoff on overlap eigenvalues.
    pub gevp_threshold: T,
    pub normalize_vectors: bool,
}

impl<T: Real> KrylovConfig<T> {
    pub fn qkud(epsilon: T) -> Self {
        Self {
            method: Method::Qkud,
            epsilon,
            ..Self::base()
        }
    }

    pub fn qrte(delta_t: T) -> Self {
        Self {
            method: Method::Qrte,
            delta_t,
            ..Self::base()
        }
    }

    fn base() -> Self {
        Self {
            method: Method::Qkud,
            epsilon: lit(0.1),
            delta_t: lit(0.1),
            max_iter: 50,
            stop_delta: lit(1e-9),
            gevp_threshold: lit(DEFAULT_GEVP_THRESHOLD),
            normalize_vectors: true,
        }
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_stop_delta(mut self, stop_delta: T) -> Self {
        self.stop_delta = stop_delta;
        self
    }

    pub fn with_gevp_threshold(mut self, threshold: T) -> Self {
        self.gevp_threshold = threshold;
        self
    }

    pub fn with_normalization(mut self, normalize: bool) -> Self {
        self.normalize_vectors = normalize;
        self
    }

    /// The step parameter consulted by the selected method.
    pub fn parameter(&self) -> T {
        match self.method {
            Method::Qkud => self.epsilon,
            Method::Qrte => self.delta_t,
        }
    }

    pub fn validate(&self) -> Result<(), KrylovError> {
        let p = self.parameter();
        if !(p > T::zero()) || !p.is_finite() {
            return Err(match self.method {
                Method::Qkud => KrylovError::InvalidEpsilon,
                Method::Qrte => KrylovError::InvalidTimeStep,
            });
        }
        if self.max_iter == 0 {
            return Err(KrylovError::InvalidMaxIter);
        }
        if !(self.stop_delta >= T::zero()) {
            return Err(KrylovError::InvalidStopDelta);
        }
        if !(self.gevp_threshold > T::zero()) {
            return Err(KrylovError::Gevp(GevpError::InvalidThreshold));
        }
        Ok(())
    }

    /// Advances one Krylov vector with the configured method.
    pub fn step(&self, prev: &Statevector<T>, cache: &SpectralCache<T>) -> Result<Statevector<T>, KrylovError> {
        match self.method {
            Method::Qkud => qkud_step(prev, self.epsilon, cache),
            Method::Qrte => qrte_step(prev, self.delta_t, cache),
        }
    }
}

/// Builds the spectral cache of `h` (which also supplies the exact ground
/// energy) and runs the Krylov loop from `psi0`.
pub fn run<T: Real>(
    config: &KrylovConfig<T>,
    h: &PauliSum<T>,
    psi0: &Statevector<T>,
) -> Result<(ConvergenceRecord<T>, KrylovSubspace<T>), KrylovError> {
    if !h.is_hermitian() {
        return Err(KrylovError::NonHermitianHamiltonian);
    }
    let cache = hermitian_eigendecompose(&h.to_dense()?)?;
    run_with_cache(config, h, &cache, psi0)
}

/// Krylov loop with a precomputed spectral cache of `h`.
///
/// Iteration 0 is the one-vector subspace `{psi0}`; iteration `n` adds the
/// `n`-th Krylov vector, solves the regularized GEVP and appends a row to the
/// record. The loop stops on `|E_n - E_{n-1}| < stop_delta`, after
/// `max_iter` iterations, or when the retained dimension has not grown for
/// [`STAGNATION_LIMIT`] consecutive iterations.
pub fn run_with_cache<T: Real>(
    config: &KrylovConfig<T>,
    h: &PauliSum<T>,
    cache: &SpectralCache<T>,
    psi0: &Statevector<T>,
) -> Result<(ConvergenceRecord<T>, KrylovSubspace<T>), KrylovError> {
    config.validate()?;
    if !h.is_hermitian() {
        return Err(KrylovError::NonHermitianHamiltonian);
    }
    if psi0.dim() != h.dim() || cache.dim() != h.dim() {
        return Err(KrylovError::DimensionMismatch {
            expected: h.dim(),
            found: if psi0.dim() != h.dim() { psi0.dim() } else { cache.dim() },
        });
    }
    let start = psi0.normalized().map_err(|_| KrylovError::ZeroInitialState)?;

    let mut monitor = ConvergenceMonitor::new(
        config.stop_delta,
        config.max_iter,
        Some(cache.ground_energy()),
    );
    let mut subspace = KrylovSubspace::new();
    subspace.push(start.clone(), T::one(), h)?;
    let sol = solve_gevp(subspace.m(), subspace.s(), config.gevp_threshold)?;
    if monitor.observe(0, &sol).is_some() {
        return Ok((monitor.into_record(), subspace));
    }

    let mut prev = start;
    for iter in 1..=config.max_iter {
        let raw = config.step(&prev, cache)?;
        let (next, scale) = if config.normalize_vectors {
            let norm = raw.norm();
            if norm == T::zero() {
                // The Krylov sequence hit the zero vector: nothing new to add.
                (raw, T::zero())
            } else {
                (raw.scaled_real(T::one() / norm), norm)
            }
        } else {
            (raw, T::one())
        };
        subspace.push(next.clone(), scale, h)?;
        let sol = solve_gevp(subspace.m(), subspace.s(), config.gevp_threshold)?;
        prev = next;
        if monitor.observe(iter, &sol).is_some() {
            break;
        }
    }
    Ok((monitor.into_record(), subspace))
}
