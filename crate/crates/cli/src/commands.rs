use std::path::{Path, PathBuf};

use qkud_core::krylov::Termination;
use qkud_core::lcu::{run_lcu, LcuRunOptions};
use qkud_core::{hermitian_eigendecompose, run_with_cache, SpectralCache64};
use rayon::prelude::*;

use crate::model::ModelSpec;
use crate::output::{summary_to_csv, RunCsv, SummaryRow, CHEMICAL_ACCURACY};
use crate::spec::{PathKind, RunSpec, SpecOverrides};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub ground: f64,
    pub spectrum: Vec<f64>,
}

fn spectral_cache(model: &ModelSpec) -> Result<(qkud_core::PauliSum64, SpectralCache64), CliError> {
    let h = model.build()?;
    if !h.is_hermitian() {
        return Err(CliError::Validation(format!("{model} is not Hermitian")));
    }
    let cache = hermitian_eigendecompose(&h.to_dense()?)?;
    Ok((h, cache))
}

pub fn cmd_exact(model: &ModelSpec) -> Result<ExactResult, CliError> {
    let (_, cache) = spectral_cache(model)?;
    Ok(ExactResult {
        ground: cache.ground_energy(),
        spectrum: cache.eigvals().to_vec(),
    })
}

/// Writes `index,energy` lines for the full spectrum.
pub fn spectrum_csv(spectrum: &[f64]) -> String {
    let mut out = String::from("index,energy\n");
    for (i, e) in spectrum.iter().enumerate() {
        out.push_str(&format!("{i},{e:?}\n"));
    }
    out
}

/// Runs one spec without touching the filesystem (apart from reading a
/// `file(...)` model).
pub fn execute(spec: &RunSpec) -> Result<RunCsv, CliError> {
    spec.validate()?;
    let (h, cache) = spectral_cache(&spec.model)?;
    let psi0 = spec.psi0.state(h.dim())?;
    let config = spec.krylov_config();
    let record = match spec.path {
        PathKind::Direct => run_with_cache(&config, &h, &cache, &psi0)?.0,
        PathKind::Lcu => {
            let options = LcuRunOptions {
                noise_sigma: spec.noise_sigma,
                seed: spec.seed,
                ..Default::default()
            };
            run_lcu(&config, &h, &cache, &psi0, &options)?.0
        }
    };
    RunCsv::from_record(spec.clone(), h.n_qubits(), cache.ground_energy(), &record)
}

/// [`execute`] plus writing the CSV to `spec.output_path` when set.
pub fn cmd_run(spec: &RunSpec) -> Result<RunCsv, CliError> {
    let run = execute(spec)?;
    if let Some(path) = &spec.output_path {
        run.write(path)?;
    }
    Ok(run)
}

pub fn exit_code(status: Termination) -> i32 {
    match status {
        Termination::ConvergedByDelta => 0,
        Termination::MaxIterReached => 2,
        Termination::SubspaceExhausted => 3,
    }
}

/// Diagnostic for runs that end far from the exact ground energy.
pub fn accuracy_warning(run: &RunCsv) -> Option<String> {
    let gap = run.final_row()?.e_exact_gap?;
    (gap.abs() > CHEMICAL_ACCURACY).then(|| {
        format!(
            "warning: final energy is {gap:e} away from the exact ground energy; \
             psi0 may have little overlap with the ground state or lie in a different symmetry sector"
        )
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SummaryRow>,
    pub summary_path: PathBuf,
}

impl SweepReport {
    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }
}

pub fn sweep_run_path(out_dir: &Path, index: usize, parameter: f64) -> PathBuf {
    out_dir.join(format!("run_{index:03}_{parameter}.csv"))
}

/// Runs the template once per parameter, at most `jobs` at a time. Child
/// failures are recorded in the summary and do not stop the other runs.
pub fn cmd_sweep(
    template: &SpecOverrides,
    parameters: &[f64],
    jobs: usize,
    out_dir: &Path,
) -> Result<SweepReport, CliError> {
    if parameters.is_empty() {
        return Err(CliError::Validation("sweep needs at least one parameter".into()));
    }
    if let Some(bad) = parameters.iter().find(|p| !(**p > 0.0) || !p.is_finite()) {
        return Err(CliError::Validation(format!("sweep parameters must be positive, got {bad}")));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Io {
        path: out_dir.to_path_buf(),
        source: e,
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let rows: Vec<SummaryRow> = pool.install(|| {
        parameters
            .par_iter()
            .enumerate()
            .map(|(i, &p)| {
                let child = SpecOverrides {
                    output_path: Some(sweep_run_path(out_dir, i, p)),
                    ..template.clone()
                };
                match child.resolve(Some(p)).and_then(|spec| cmd_run(&spec)) {
                    Ok(run) => SummaryRow::from_run(p, &run),
                    Err(e) => SummaryRow::from_error(p, &e),
                }
            })
            .collect()
    });
    let summary_path = out_dir.join("summary.csv");
    std::fs::write(&summary_path, summary_to_csv(&rows)?).map_err(|e| CliError::Io {
        path: summary_path.clone(),
        source: e,
    })?;
    Ok(SweepReport { rows, summary_path })
}
