//! CSV outputs.
//!
//! A run file starts with one `# {json}` preamble line holding the schema
//! version, the resolved [`RunSpec`] and the run status, followed by a
//! header and one row per iteration. Floats use shortest round-trip
//! formatting, so identical runs give identical bytes.

use std::io::Write;
use std::path::Path;

use qkud_core::krylov::{ConvergenceRecord, Termination};
use serde::{Deserialize, Serialize};

use crate::spec::RunSpec;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Energy threshold used in sweep summaries (Hartree convention).
pub const CHEMICAL_ACCURACY: f64 = 1.6e-3;

pub const RUN_COLUMNS: [&str; 5] = ["iter", "e_min", "e_exact_gap", "cond_s", "kept_dim"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preamble {
    pub schema_version: u32,
    pub run_spec: RunSpec,
    pub n_qubits: usize,
    pub exact_ground: f64,
    pub status: Termination,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub iter: usize,
    pub e_min: f64,
    pub e_exact_gap: Option<f64>,
    pub cond_s: f64,
    pub kept_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunCsv {
    pub preamble: Preamble,
    pub rows: Vec<RunRow>,
}

fn csv_err(e: impl std::fmt::Display) -> CliError {
    CliError::Csv(e.to_string())
}

impl RunCsv {
    pub fn from_record(
        run_spec: RunSpec,
        n_qubits: usize,
        exact_ground: f64,
        record: &ConvergenceRecord<f64>,
    ) -> Result<Self, CliError> {
        let status = record
            .status
            .ok_or_else(|| CliError::Csv("run ended without a status".into()))?;
        let rows = record
            .rows
            .iter()
            .map(|r| RunRow {
                iter: r.iter,
                e_min: r.e_min,
                e_exact_gap: r.e_exact_gap,
                cond_s: r.cond_s,
                kept_dim: r.kept_dim,
            })
            .collect();
        let out = RunCsv {
            preamble: Preamble {
                schema_version: SCHEMA_VERSION,
                run_spec,
                n_qubits,
                exact_ground,
                status,
            },
            rows,
        };
        out.check()?;
        Ok(out)
    }

    fn check(&self) -> Result<(), CliError> {
        if self.preamble.schema_version != SCHEMA_VERSION {
            return Err(csv_err(format!(
                "unsupported schema version {}",
                self.preamble.schema_version
            )));
        }
        for r in &self.rows {
            if !r.e_min.is_finite() || r.e_exact_gap.is_some_and(|g| !g.is_finite()) {
                return Err(CliError::NonFiniteEnergy { iter: r.iter });
            }
        }
        Ok(())
    }

    pub fn final_row(&self) -> Option<&RunRow> {
        self.rows.last()
    }

    pub fn to_csv_string(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        writeln!(buf, "# {}", serde_json::to_string(&self.preamble).map_err(csv_err)?).map_err(csv_err)?;
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            for r in &self.rows {
                w.serialize(r).map_err(csv_err)?;
            }
            w.flush().map_err(csv_err)?;
        }
        String::from_utf8(buf).map_err(csv_err)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let (first, rest) = text.split_once('\n').ok_or_else(|| csv_err("missing preamble"))?;
        let json = first
            .strip_prefix("# ")
            .ok_or_else(|| csv_err("first line is not a `# {json}` preamble"))?;
        let preamble: Preamble = serde_json::from_str(json).map_err(csv_err)?;
        let mut reader = csv::Reader::from_reader(rest.as_bytes());
        let header: Vec<String> = reader.headers().map_err(csv_err)?.iter().map(String::from).collect();
        if header != RUN_COLUMNS {
            return Err(csv_err(format!("unexpected columns {header:?}")));
        }
        let rows = reader
            .deserialize()
            .collect::<Result<Vec<RunRow>, _>>()
            .map_err(csv_err)?;
        let out = RunCsv { preamble, rows };
        out.check()?;
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = self.to_csv_string()?;
        std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Self::parse(&text)
    }
}

/// One line of a sweep's `summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub parameter: f64,
    pub final_e_min: Option<f64>,
    pub iters_to_chemical_accuracy: Option<usize>,
    pub final_cond_s: Option<f64>,
    /// Termination reason, or `error`.
    pub status: String,
    pub error: Option<String>,
}

impl SummaryRow {
    pub fn from_run(parameter: f64, run: &RunCsv) -> Self {
        let last = run.final_row();
        SummaryRow {
            parameter,
            final_e_min: last.map(|r| r.e_min),
            iters_to_chemical_accuracy: run
                .rows
                .iter()
                .find(|r| r.e_exact_gap.is_some_and(|g| g.abs() <= CHEMICAL_ACCURACY))
                .map(|r| r.iter),
            final_cond_s: last.map(|r| r.cond_s),
            status: run.preamble.status.to_string(),
            error: None,
        }
    }

    pub fn from_error(parameter: f64, err: &CliError) -> Self {
        SummaryRow {
            parameter,
            final_e_min: None,
            iters_to_chemical_accuracy: None,
            final_cond_s: None,
            status: "error".into(),
            error: Some(err.to_string()),
        }
    }
}

pub fn summary_to_csv(rows: &[SummaryRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

pub fn parse_summary(text: &str) -> Result<Vec<SummaryRow>, CliError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<Vec<SummaryRow>, _>>()
        .map_err(csv_err)
}
