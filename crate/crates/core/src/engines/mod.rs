//! The (1+1) EA and GSEMO, plus trial bookkeeping.

pub mod ea;
pub mod evaluator;
pub mod gsemo;
pub mod mutation;
pub mod pareto;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitness::{ObjectiveVector, Problem, Sense};
use crate::graph::{Graph, Solution};

pub use ea::{one_plus_one_ea, OnePlusOneEa};
pub use gsemo::{gsemo, Gsemo};
pub use mutation::{mutate, sample_flips};
pub use pareto::{dominates, Dominance, ParetoArchive};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Ea,
    Gsemo,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ea => "ea",
            Algorithm::Gsemo => "gsemo",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ea" | "1+1" | "(1+1)-ea" => Ok(Algorithm::Ea),
            "gsemo" => Ok(Algorithm::Gsemo),
            other => Err(Error::usage(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// When to stop a run: after `max_evaluations` fitness evaluations, or
/// earlier once a feasible solution reaches `target` size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunBudget {
    pub max_evaluations: u64,
    #[serde(default)]
    pub target: Option<usize>,
}

impl RunBudget {
    pub fn evaluations(max_evaluations: u64) -> Self {
        RunBudget {
            max_evaluations,
            target: None,
        }
    }

    pub fn with_target(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_evaluations == 0 {
            return Err(Error::usage("max_evaluations must be at least 1"));
        }
        Ok(())
    }

    /// Size `target` is an upper limit when minimising and a lower limit
    /// when maximising.
    pub fn target_met(&self, problem: Problem, feasible: bool, size: usize) -> bool {
        match self.target {
            Some(target) if feasible => match problem.sense() {
                Sense::Minimize => size <= target,
                Sense::Maximize => size >= target,
            },
            _ => false,
        }
    }

    /// Default budgets: `50 n ln n` for the EA on MDS/MVC/CDS, `5 n^3` for
    /// the EA on MIS and `10 n^3` for GSEMO.
    pub fn default_for(n: usize, problem: Problem, algorithm: Algorithm) -> Self {
        let nf = n as f64;
        let evals = match (algorithm, problem) {
            (Algorithm::Ea, Problem::Mis) => 5.0 * nf.powi(3),
            (Algorithm::Ea, _) => 50.0 * nf * nf.ln(),
            (Algorithm::Gsemo, _) => 10.0 * nf.powi(3),
        };
        RunBudget::evaluations((evals.ceil() as u64).max(1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchivePoint {
    pub objectives: ObjectiveVector,
    pub size: usize,
    pub feasible: bool,
}

/// Outcome of one seeded run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub problem: Problem,
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub evals_to_feasible: Option<u64>,
    pub evals_total: u64,
    pub best_feasible_size: Option<usize>,
    pub first_feasible_size: Option<usize>,
    /// EA: the final incumbent. GSEMO: the best feasible member, or an
    /// arbitrary member when none is feasible.
    pub final_solution: Solution,
    pub archive_snapshot: Vec<ArchivePoint>,
    pub wall_time_ms: f64,
}

impl TrialRecord {
    /// The record with its wall-clock field cleared, for reproducibility
    /// comparisons.
    pub fn without_wall_time(&self) -> TrialRecord {
        TrialRecord {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

pub fn run_trial(
    g: &Graph,
    problem: Problem,
    algorithm: Algorithm,
    budget: &RunBudget,
    seed: u64,
) -> Result<TrialRecord> {
    match algorithm {
        Algorithm::Ea => one_plus_one_ea(g, problem, budget, seed),
        Algorithm::Gsemo => gsemo(g, problem, budget, seed),
    }
}

/// One record per seed, in seed order. `workers` sets the thread count
/// (`None` uses the global pool); results do not depend on it.
pub fn run_trials(
    g: &Graph,
    problem: Problem,
    algorithm: Algorithm,
    budget: &RunBudget,
    seeds: &[u64],
    workers: Option<usize>,
) -> Result<Vec<TrialRecord>> {
    budget.validate()?;
    problem.check_graph(g)?;
    let mut sorted = seeds.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::usage("trial seeds must be distinct"));
    }
    let run = || -> Result<Vec<TrialRecord>> {
        seeds
            .par_iter()
            .map(|&seed| run_trial(g, problem, algorithm, budget, seed))
            .collect()
    };
    match workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::usage(format!("cannot build worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ea_solves_small_instances() {
        let budget = RunBudget::evaluations(10_000);
        let p3 = one_plus_one_ea(&Graph::path(3), Problem::Mds, &budget, 5).unwrap();
        assert_eq!(p3.best_feasible_size, Some(1));
        let k2 = one_plus_one_ea(&Graph::complete(2), Problem::Mvc, &budget, 5).unwrap();
        assert_eq!(k2.best_feasible_size, Some(1));
        assert_eq!(p3.evals_total, 10_000);
    }

    #[test]
    fn ea_is_deterministic() {
        let g = Graph::cycle(9);
        let budget = RunBudget::evaluations(2_000);
        let a = one_plus_one_ea(&g, Problem::Cds, &budget, 77).unwrap();
        let b = one_plus_one_ea(&g, Problem::Cds, &budget, 77).unwrap();
        assert_eq!(a.without_wall_time(), b.without_wall_time());
    }

    #[test]
    fn gsemo_on_path_reaches_the_exact_front() {
        let g = Graph::path(3);
        let rec = gsemo(&g, Problem::Mds, &RunBudget::evaluations(10_000), 3).unwrap();
        assert_eq!(rec.best_feasible_size, Some(1));
        // Front of (u, |x|) over all 8 subsets: (3,0), (0,1).
        let front: Vec<_> = rec.archive_snapshot.iter().map(|p| p.objectives).collect();
        assert_eq!(front, vec![ObjectiveVector(0, 1), ObjectiveVector(3, 0)]);
    }

    #[test]
    fn gsemo_is_deterministic() {
        let g = Graph::star(5);
        let budget = RunBudget::evaluations(3_000);
        let a = gsemo(&g, Problem::Mis, &budget, 9).unwrap();
        let b = gsemo(&g, Problem::Mis, &budget, 9).unwrap();
        assert_eq!(a.without_wall_time(), b.without_wall_time());
        assert_eq!(a.best_feasible_size, Some(5));
    }

    #[test]
    fn target_stops_early() {
        let g = Graph::star(6);
        let budget = RunBudget::evaluations(1_000_000).with_target(1);
        let rec = one_plus_one_ea(&g, Problem::Mds, &budget, 1).unwrap();
        assert_eq!(rec.best_feasible_size, Some(1));
        assert!(rec.evals_total < 1_000_000);
    }

    #[test]
    fn trials_follow_seed_order() {
        let g = Graph::cycle(6);
        let budget = RunBudget::evaluations(500);
        let recs = run_trials(&g, Problem::Mds, Algorithm::Ea, &budget, &[4, 2], Some(2)).unwrap();
        assert_eq!(recs.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![4, 2]);
        assert!(run_trials(&g, Problem::Mds, Algorithm::Ea, &budget, &[1, 1], None).is_err());
    }

    #[test]
    fn cds_rejects_disconnected_graphs() {
        let budget = RunBudget::evaluations(10);
        assert!(one_plus_one_ea(&Graph::empty(3), Problem::Cds, &budget, 0).is_err());
        assert!(gsemo(&Graph::empty(3), Problem::Cds, &budget, 0).is_err());
    }

    #[test]
    fn default_budgets() {
        let n = 100usize;
        let nf = n as f64;
        assert_eq!(
            RunBudget::default_for(n, Problem::Mds, Algorithm::Ea).max_evaluations,
            (50.0 * nf * nf.ln()).ceil() as u64
        );
        assert_eq!(RunBudget::default_for(n, Problem::Mis, Algorithm::Ea).max_evaluations, 5_000_000);
        assert_eq!(RunBudget::default_for(n, Problem::Cds, Algorithm::Gsemo).max_evaluations, 10_000_000);
    }
}
