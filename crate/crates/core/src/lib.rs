//! Evolutionary algorithms for dominating set, vertex cover, connected
//! dominating set and independent set on power-law bounded graphs.

pub mod engines;
pub mod error;
pub mod fitness;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod plb;
pub mod rng;

pub use engines::{run_trial, run_trials, Algorithm, RunBudget, TrialRecord};
pub use error::{Error, Result};
pub use fitness::{ObjectiveVector, Problem, Sense};
pub use graph::{Graph, Solution};
