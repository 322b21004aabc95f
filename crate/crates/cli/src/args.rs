use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qkud_core::Method;

use crate::model::ModelSpec;
use crate::spec::{PathKind, Psi0, SpecOverrides};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qkud", version, about = "Krylov ground-state runs on exact statevectors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground energy by full diagonalization.
    Exact {
        #[arg(long)]
        model: ModelSpec,
        /// Also write the full spectrum as `index,energy` CSV.
        #[arg(long)]
        spectrum: bool,
        /// Spectrum destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One Krylov run; writes the convergence CSV.
    Run(RunArgs),
    /// One run per parameter value plus `summary.csv`.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// tfim(n,J,h), hubbard(n_sites,t,U) or file(path)
    #[arg(long)]
    pub model: Option<ModelSpec>,
    #[arg(long)]
    pub method: Option<Method>,
    /// eps for qkud, dt for qrte; comma-separated list for sweeps
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<String>,
    #[arg(long, value_enum)]
    pub path: Option<PathKind>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Stop once successive energies differ by less than this
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub gevp_threshold: Option<f64>,
    /// Basis-state index or `plus`
    #[arg(long)]
    pub psi0: Option<Psi0>,
    /// Gaussian noise on primitives (lcu path only)
    #[arg(long)]
    pub noise_sigma: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV for `run`, output directory for `sweep`
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with the same fields; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Concurrent child runs
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn parse_float(s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("not a number: {s:?}")))
}

pub fn parse_param_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_float).collect()
}

impl RunArgs {
    fn flag_overrides(&self) -> SpecOverrides {
        SpecOverrides {
            model: self.model.clone(),
            method: self.method,
            path: self.path,
            max_iter: self.max_iter,
            stop_delta: self.delta,
            gevp_threshold: self.gevp_threshold,
            psi0: self.psi0,
            noise_sigma: self.noise_sigma,
            seed: self.seed,
            ..Default::default()
        }
    }

    fn base(&self) -> Result<SpecOverrides, CliError> {
        match &self.config {
            Some(path) => SpecOverrides::from_file(path),
            None => Ok(SpecOverrides::default()),
        }
    }

    /// Config file overlaid with flags, for a single run.
    pub fn run_overrides(&self) -> Result<SpecOverrides, CliError> {
        let mut flags = self.flag_overrides();
        flags.parameter = self.param.as_deref().map(parse_float).transpose()?;
        flags.output_path = self.out.clone();
        Ok(self.base()?.overlay(flags))
    }

    /// Template and parameter list for a sweep. `--out` names a directory.
    pub fn sweep_overrides(&self) -> Result<(SpecOverrides, Vec<f64>, PathBuf), CliError> {
        let mut merged = self.base()?.overlay(self.flag_overrides());
        let params = match &self.param {
            Some(list) => parse_param_list(list)?,
            None => merged
                .parameters
                .clone()
                .or(merged.parameter.map(|p| vec![p]))
                .unwrap_or_default(),
        };
        let out_dir = self
            .out
            .clone()
            .or(merged.output_path.take())
            .unwrap_or_else(|| PathBuf::from("sweep_out"));
        merged.parameter = None;
        merged.parameters = None;
        Ok((merged, params, out_dir))
    }
}
