//! Serializable run configurations. Every command can read one from a JSON
//! file (`--config`); command-line flags override its fields.

use std::fs;
use std::path::{Path, PathBuf};

use haarqmc::estimator::{DEFAULT_PERMUTATION_SEED, DEFAULT_RANDOM_SEED};
use haarqmc::{from_label, Mode, OrthoSequenceSpec, Polytope};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

/// Parameters of a single `estimate` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Built-in label or `r-polytope-{n}d-{count}v-seed{seed}`.
    pub polytope: Option<String>,
    /// JSON polytope file; exclusive with `polytope`.
    pub polytope_file: Option<PathBuf>,
    /// Ambient dimension; checked against the polytope when given.
    pub n: Option<usize>,
    pub k: usize,
    pub samples: u64,
    pub mode: Mode,
    pub seed: u64,
    /// Overrides the default scrambled Halton inputs of the quasi modes.
    pub sequence: Option<OrthoSequenceSpec>,
    /// Empty means every power of ten below `samples`.
    pub trace_points: Vec<u64>,
    /// Write the CSV here instead of stdout.
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            polytope: None,
            polytope_file: None,
            n: None,
            k: 1,
            samples: 1000,
            mode: Mode::Qmc,
            seed: DEFAULT_RANDOM_SEED,
            sequence: None,
            trace_points: Vec::new(),
            output: None,
        }
    }
}

impl RunConfig {
    /// Loads the polytope named by the config. The second value tells
    /// whether it came from a label, so stored references apply.
    pub fn load_polytope(&self) -> Result<(Polytope, bool)> {
        let (polytope, labelled) = match (&self.polytope, &self.polytope_file) {
            (Some(label), None) => (from_label(label)?, true),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                (Polytope::from_json(&text)?, false)
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "give either a polytope label or a polytope file, not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Usage(
                    "no polytope given (--polytope or --polytope-file)".into(),
                ))
            }
        };
        if let Some(n) = self.n {
            if n != polytope.n {
                return Err(haarqmc::Error::DimensionMismatch {
                    expected: polytope.n,
                    found: n,
                }
                .into());
            }
        }
        Ok((polytope, labelled))
    }

    pub fn trace_points(&self) -> Vec<u64> {
        if !self.trace_points.is_empty() {
            return self.trace_points.clone();
        }
        std::iter::successors(Some(10u64), |m| m.checked_mul(10))
            .take_while(|&m| m < self.samples)
            .collect()
    }
}

/// Parameters of the `gen` commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub n: usize,
    /// Subspace dimension for Grassmann output.
    pub k: usize,
    pub count: u64,
    pub mode: Mode,
    pub seed: u64,
    pub permutation_seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n: 3,
            k: 1,
            count: 10,
            mode: Mode::Qmc,
            seed: DEFAULT_RANDOM_SEED,
            permutation_seed: DEFAULT_PERMUTATION_SEED,
            output: None,
        }
    }
}

/// Parameters of `reproduce-tables`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TablesConfig {
    pub output_dir: PathBuf,
    /// Seed of the random-mode cells.
    pub seed: u64,
    pub permutation_seed: u64,
}

impl Default for TablesConfig {
    fn default() -> Self {
        Self {
            output_dir: PathBuf::from("."),
            seed: DEFAULT_RANDOM_SEED,
            permutation_seed: DEFAULT_PERMUTATION_SEED,
        }
    }
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Config {
        path: path.to_path_buf(),
        source,
    })
}
