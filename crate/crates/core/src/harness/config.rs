use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engines::{Algorithm, RunBudget};
use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::generators::GenSpec;

/// One `(beta, t)` candidate; `c1` is always fitted to the graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlbChoice {
    pub beta: f64,
    pub t: f64,
}

pub fn default_plb_grid() -> Vec<PlbChoice> {
    [2.1, 2.5, 3.0]
        .into_iter()
        .flat_map(|beta| [0.0, 1.0].map(|t| PlbChoice { beta, t }))
        .collect()
}

/// Everything that determines a results file. Trial `i` uses seed
/// `base_seed + i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Generated graph, or `model: edge-list` with a `path` for a file.
    pub graph: GenSpec,
    pub problem: Problem,
    pub algorithm: Algorithm,
    /// Defaults to [`RunBudget::default_for`].
    #[serde(default)]
    pub budget: Option<RunBudget>,
    pub trials: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_plb_grid")]
    pub plb: Vec<PlbChoice>,
    /// Graphs up to this size get an exact reference; larger ones get a
    /// bound. Defaults to the `PLBEA_EXACT_LIMIT` setting.
    #[serde(default)]
    pub exact_limit: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(graph: GenSpec, problem: Problem, algorithm: Algorithm, trials: usize) -> Self {
        ExperimentConfig {
            graph,
            problem,
            algorithm,
            budget: None,
            trials,
            base_seed: 0,
            plb: default_plb_grid(),
            exact_limit: None,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::usage("trials must be at least 1"));
        }
        if let Some(budget) = &self.budget {
            budget.validate()?;
        }
        if self.base_seed.checked_add(self.trials as u64 - 1).is_none() {
            return Err(Error::usage("base_seed + trials overflows"));
        }
        for choice in &self.plb {
            if !(choice.beta.is_finite() && choice.beta > 1.0 && choice.t.is_finite() && choice.t >= 0.0) {
                return Err(Error::usage(format!(
                    "invalid plb choice beta={} t={}",
                    choice.beta, choice.t
                )));
            }
        }
        Ok(())
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.trials as u64).map(|i| self.base_seed + i).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::usage(format!("bad config: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// SHA-256 of the compact JSON form, in hex.
    pub fn hash(&self) -> String {
        Sha256::digest(self.to_json().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
