use std::time::Instant;

use crate::engines::evaluator::bi_objective_unchecked;
use crate::engines::mutation::{mutate, uniform_solution};
use crate::engines::pareto::{ArchiveEntry, ParetoArchive};
use crate::engines::{Algorithm, ArchivePoint, RunBudget, TrialRecord};
use crate::error::Result;
use crate::fitness::{self, Problem};
use crate::graph::Graph;
use crate::rng::{rng_from_seed, TrialRng};

/// Iterations between archive audits.
pub const DEFAULT_AUDIT_INTERVAL: u64 = if cfg!(debug_assertions) { 1 } else { 1000 };

/// Global SEMO over the problem's bi-objective fitness.
pub struct Gsemo<'g> {
    graph: &'g Graph,
    problem: Problem,
    seed: u64,
    rng: TrialRng,
    archive: ParetoArchive,
    evaluations: u64,
    evals_to_feasible: Option<u64>,
    first_feasible_size: Option<usize>,
    audit_interval: u64,
}

impl<'g> Gsemo<'g> {
    pub fn new(graph: &'g Graph, problem: Problem, seed: u64) -> Result<Self> {
        problem.check_graph(graph)?;
        let mut rng = rng_from_seed(seed);
        let x = uniform_solution(graph.n(), &mut rng);
        let mut gsemo = Gsemo {
            graph,
            problem,
            seed,
            rng,
            archive: ParetoArchive::new(problem.sense()),
            evaluations: 0,
            evals_to_feasible: None,
            first_feasible_size: None,
            audit_interval: DEFAULT_AUDIT_INTERVAL,
        };
        let entry = gsemo.evaluate(x);
        gsemo.admit(entry);
        Ok(gsemo)
    }

    pub fn with_audit_interval(mut self, every: u64) -> Self {
        self.audit_interval = every.max(1);
        self
    }

    fn evaluate(&mut self, solution: crate::graph::Solution) -> ArchiveEntry {
        self.evaluations += 1;
        let objectives = bi_objective_unchecked(self.graph, &solution, self.problem);
        let feasible = match self.problem {
            Problem::Mds | Problem::Mvc => objectives.0 == 0,
            // u + w = 1 with a non-empty selection means u = 0 and w = 1.
            Problem::Cds => objectives.0 == 1 && objectives.1 > 0,
            Problem::Mis => objectives.1 == 0,
            Problem::MvcDom => fitness::is_feasible(self.graph, &solution, self.problem)
                .expect("solution length matches graph"),
        };
        ArchiveEntry {
            solution,
            objectives,
            feasible,
        }
    }

    fn admit(&mut self, entry: ArchiveEntry) -> bool {
        let feasible = entry.feasible;
        let size = entry.solution.count_ones();
        let inserted = self.archive.offer(entry);
        if inserted && feasible && self.evals_to_feasible.is_none() {
            self.evals_to_feasible = Some(self.evaluations);
            self.first_feasible_size = Some(size);
        }
        inserted
    }

    /// One iteration: pick a member uniformly, mutate, offer the offspring.
    /// Returns whether the offspring entered the archive.
    pub fn step(&mut self) -> bool {
        let parent = self.archive.pick(&mut self.rng).solution.clone();
        let child = mutate(&parent, &mut self.rng);
        let entry = self.evaluate(child);
        let inserted = self.admit(entry);
        if self.evaluations % self.audit_interval == 0 {
            if let Err(msg) = self.archive.audit(self.graph.n()) {
                panic!("archive invariant violated: {msg}");
            }
        }
        inserted
    }

    pub fn archive(&self) -> &ParetoArchive {
        &self.archive
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    fn target_reached(&self, budget: &RunBudget) -> bool {
        self.archive
            .best_feasible()
            .is_some_and(|e| budget.target_met(self.problem, true, e.solution.count_ones()))
    }

    pub fn run(mut self, budget: &RunBudget) -> TrialRecord {
        let start = Instant::now();
        while self.evaluations < budget.max_evaluations && !self.target_reached(budget) {
            self.step();
        }
        let best = self.archive.best_feasible();
        let mut snapshot: Vec<ArchivePoint> = self
            .archive
            .entries()
            .iter()
            .map(|e| ArchivePoint {
                objectives: e.objectives,
                size: e.solution.count_ones(),
                feasible: e.feasible,
            })
            .collect();
        snapshot.sort_by_key(|p| p.objectives);
        TrialRecord {
            seed: self.seed,
            problem: self.problem,
            algorithm: Algorithm::Gsemo,
            n: self.graph.n(),
            m: self.graph.m(),
            evals_to_feasible: self.evals_to_feasible,
            evals_total: self.evaluations,
            best_feasible_size: best.map(|e| e.solution.count_ones()),
            first_feasible_size: self.first_feasible_size,
            final_solution: best
                .unwrap_or_else(|| &self.archive.entries()[0])
                .solution
                .clone(),
            archive_snapshot: snapshot,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub fn gsemo(g: &Graph, p: Problem, budget: &RunBudget, seed: u64) -> Result<TrialRecord> {
    budget.validate()?;
    Ok(Gsemo::new(g, p, seed)?.run(budget))
}
