//! Experiment driver for Krylov ground-state runs: exact references, single
//! runs and parameter sweeps with CSV outputs.

pub mod args;
pub mod commands;
pub mod model;
pub mod output;
pub mod spec;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::{cmd_exact, cmd_run, cmd_sweep, execute, exit_code};
pub use model::ModelSpec;
pub use output::{RunCsv, SummaryRow, CHEMICAL_ACCURACY};
pub use spec::{PathKind, Psi0, RunSpec, SpecOverrides};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid run settings: {0}")]
    Validation(String),
    #[error("cannot parse model {0:?}; expected tfim(n,J,h), hubbard(n_sites,t,U) or file(path)")]
    InvalidModel(String),
    #[error("bad config file {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("non-finite energy at iteration {iter}")]
    NonFiniteEnergy { iter: usize },
    #[error(transparent)]
    Hamiltonian(#[from] qkud_core::HamiltonianError),
    #[error(transparent)]
    Linalg(#[from] qkud_core::LinalgError),
    #[error(transparent)]
    Krylov(#[from] qkud_core::KrylovError),
    #[error(transparent)]
    Lcu(#[from] qkud_core::LcuError),
}
