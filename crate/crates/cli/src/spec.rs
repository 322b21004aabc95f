use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qkud_core::lcu::MAX_ORDER;
use qkud_core::{KrylovConfig64, Method, Statevector64};
use serde::{Deserialize, Serialize};

use crate::model::ModelSpec;
use crate::CliError;

/// Initial state: a computational basis state or the uniform superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Psi0 {
    Index(u64),
    #[serde(with = "plus_keyword")]
    Plus,
}

mod plus_keyword {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("plus")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "plus" {
            Ok(())
        } else {
            Err(serde::de::Error::custom(format!("unknown psi0 keyword {s:?}")))
        }
    }
}

impl Psi0 {
    pub fn state(&self, dim: usize) -> Result<Statevector64, CliError> {
        match *self {
            Psi0::Plus => Ok(Statevector64::uniform(dim)),
            Psi0::Index(i) => {
                if i >= dim as u64 {
                    return Err(CliError::Validation(format!(
                        "psi0 index {i} out of range for dimension {dim}"
                    )));
                }
                Ok(Statevector64::basis(dim, i as usize)?)
            }
        }
    }
}

impl fmt::Display for Psi0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psi0::Index(i) => write!(f, "{i}"),
            Psi0::Plus => f.write_str("plus"),
        }
    }
}

impl FromStr for Psi0 {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("plus") {
            return Ok(Psi0::Plus);
        }
        s.parse()
            .map(Psi0::Index)
            .map_err(|_| CliError::Validation(format!("psi0 must be a basis index or `plus`, got {s:?}")))
    }
}

/// How `M` and `S` are obtained: inner products of simulated Krylov vectors,
/// or recombination of primitive expectation values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    #[default]
    Direct,
    Lcu,
}

/// Fully resolved run description; echoed into every output preamble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub model: ModelSpec,
    pub method: Method,
    /// `eps` for QKUD, `dt` for QRTE.
    pub parameter: f64,
    pub path: PathKind,
    pub max_iter: usize,
    pub stop_delta: f64,
    pub gevp_threshold: f64,
    pub psi0: Psi0,
    pub noise_sigma: f64,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

/// Partial run description, as read from `--config` or collected from flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecOverrides {
    pub model: Option<ModelSpec>,
    pub method: Option<Method>,
    pub parameter: Option<f64>,
    /// Parameter list for sweeps.
    pub parameters: Option<Vec<f64>>,
    pub path: Option<PathKind>,
    pub max_iter: Option<usize>,
    pub stop_delta: Option<f64>,
    pub gevp_threshold: Option<f64>,
    pub psi0: Option<Psi0>,
    pub noise_sigma: Option<f64>,
    pub seed: Option<u64>,
    pub output_path: Option<PathBuf>,
}

impl SpecOverrides {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `top` win over `self`.
    pub fn overlay(self, top: SpecOverrides) -> SpecOverrides {
        SpecOverrides {
            model: top.model.or(self.model),
            method: top.method.or(self.method),
            parameter: top.parameter.or(self.parameter),
            parameters: top.parameters.or(self.parameters),
            path: top.path.or(self.path),
            max_iter: top.max_iter.or(self.max_iter),
            stop_delta: top.stop_delta.or(self.stop_delta),
            gevp_threshold: top.gevp_threshold.or(self.gevp_threshold),
            psi0: top.psi0.or(self.psi0),
            noise_sigma: top.noise_sigma.or(self.noise_sigma),
            seed: top.seed.or(self.seed),
            output_path: top.output_path.or(self.output_path),
        }
    }

    /// Fills defaults and validates. `parameter` may be missing for sweeps,
    /// which substitute each list value afterwards.
    pub fn resolve(&self, parameter: Option<f64>) -> Result<RunSpec, CliError> {
        let defaults = KrylovConfig64::qkud(0.1);
        let model = self
            .model
            .clone()
            .ok_or_else(|| CliError::Validation("--model is required".into()))?;
        let parameter = parameter
            .or(self.parameter)
            .ok_or_else(|| CliError::Validation("--param is required".into()))?;
        let spec = RunSpec {
            model,
            method: self.method.unwrap_or(Method::Qkud),
            parameter,
            path: self.path.unwrap_or_default(),
            max_iter: self.max_iter.unwrap_or(defaults.max_iter),
            stop_delta: self.stop_delta.unwrap_or(defaults.stop_delta),
            gevp_threshold: self.gevp_threshold.unwrap_or(defaults.gevp_threshold),
            psi0: self.psi0.unwrap_or(Psi0::Index(0)),
            noise_sigma: self.noise_sigma.unwrap_or(0.0),
            seed: self.seed.unwrap_or(0),
            output_path: self.output_path.clone(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl RunSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::Validation(msg));
        let name = match self.method {
            Method::Qkud => "epsilon",
            Method::Qrte => "time step",
        };
        if !(self.parameter > 0.0) || !self.parameter.is_finite() {
            return fail(format!("{name} must be positive and finite, got {}", self.parameter));
        }
        if self.max_iter == 0 {
            return fail("max_iter must be at least 1".into());
        }
        if !(self.stop_delta >= 0.0) {
            return fail(format!("stop_delta must be non-negative, got {}", self.stop_delta));
        }
        if !(self.gevp_threshold > 0.0) {
            return fail(format!("gevp_threshold must be positive, got {}", self.gevp_threshold));
        }
        if !(self.noise_sigma >= 0.0) || !self.noise_sigma.is_finite() {
            return fail(format!("noise_sigma must be non-negative, got {}", self.noise_sigma));
        }
        if self.path == PathKind::Lcu {
            if self.method != Method::Qkud {
                return fail("the lcu path requires --method qkud".into());
            }
            if self.max_iter > MAX_ORDER as usize {
                return fail(format!("the lcu path supports at most {MAX_ORDER} iterations"));
            }
        } else if self.noise_sigma > 0.0 {
            return fail("--noise-sigma perturbs primitives and requires --path lcu".into());
        }
        Ok(())
    }

    pub fn krylov_config(&self) -> KrylovConfig64 {
        let base = match self.method {
            Method::Qkud => KrylovConfig64::qkud(self.parameter),
            Method::Qrte => KrylovConfig64::qrte(self.parameter),
        };
        base.with_max_iter(self.max_iter)
            .with_stop_delta(self.stop_delta)
            .with_gevp_threshold(self.gevp_threshold)
    }
}
