use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qkud_core::{build_hubbard_chain, build_tfim, parse_pauli_file, PauliSum64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Hamiltonian source, written `tfim(n,J,h)`, `hubbard(n_sites,t,U)` or
/// `file(path)`. The `name:args` form (`tfim:6,1,1`) is accepted too.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Tfim { n: usize, coupling: f64, field: f64 },
    Hubbard { n_sites: usize, hopping: f64, onsite: f64 },
    File { path: PathBuf },
}

impl ModelSpec {
    pub fn build(&self) -> Result<PauliSum64, CliError> {
        let h = match self {
            ModelSpec::Tfim { n, coupling, field } => build_tfim(*n, *coupling, *field)?,
            ModelSpec::Hubbard {
                n_sites,
                hopping,
                onsite,
            } => build_hubbard_chain(*n_sites, *hopping, *onsite)?,
            ModelSpec::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                    path: path.clone(),
                    source: e,
                })?;
                parse_pauli_file(&text)?
            }
        };
        Ok(h)
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Tfim { n, coupling, field } => write!(f, "tfim({n},{coupling},{field})"),
            ModelSpec::Hubbard {
                n_sites,
                hopping,
                onsite,
            } => write!(f, "hubbard({n_sites},{hopping},{onsite})"),
            ModelSpec::File { path } => write!(f, "file({})", path.display()),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliError::InvalidModel(s.to_string());
        let s = s.trim();
        let (name, args) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&s[..open], inner)
        } else if let Some((name, rest)) = s.split_once(':') {
            (name, rest)
        } else {
            return Err(bad());
        };
        let name = name.trim().to_ascii_lowercase();
        if name == "file" {
            let path = args.trim();
            if path.is_empty() {
                return Err(bad());
            }
            return Ok(ModelSpec::File {
                path: PathBuf::from(path),
            });
        }
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let size: usize = parts[0].parse().map_err(|_| bad())?;
        let a: f64 = parts[1].parse().map_err(|_| bad())?;
        let b: f64 = parts[2].parse().map_err(|_| bad())?;
        if !a.is_finite() || !b.is_finite() {
            return Err(bad());
        }
        match name.as_str() {
            "tfim" => Ok(ModelSpec::Tfim {
                n: size,
                coupling: a,
                field: b,
            }),
            "hubbard" => Ok(ModelSpec::Hubbard {
                n_sites: size,
                hopping: a,
                onsite: b,
            }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
