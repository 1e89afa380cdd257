use std::time::Instant;

use crate::engines::evaluator::IncrementalEvaluator;
use crate::engines::mutation::{sample_flips, uniform_solution};
use crate::engines::{Algorithm, RunBudget, TrialRecord};
use crate::error::Result;
use crate::fitness::{Problem, Sense};
use crate::graph::{Graph, Solution};
use crate::rng::{rng_from_seed, TrialRng};

/// The (1+1) EA driven one offspring at a time.
///
/// Offspring replace the incumbent when they are at least as good under the
/// problem's scalar fitness, so plateau moves are always taken.
pub struct OnePlusOneEa<'g> {
    graph: &'g Graph,
    problem: Problem,
    seed: u64,
    rng: TrialRng,
    eval: IncrementalEvaluator<'g>,
    fitness: i64,
    evaluations: u64,
    evals_to_feasible: Option<u64>,
    first_feasible_size: Option<usize>,
    flips: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EaStep {
    pub accepted: bool,
    pub offspring_fitness: i64,
    pub flipped: usize,
}

impl<'g> OnePlusOneEa<'g> {
    /// Samples and evaluates the uniform initial solution (one evaluation).
    pub fn new(graph: &'g Graph, problem: Problem, seed: u64) -> Result<Self> {
        problem.check_graph(graph)?;
        let mut rng = rng_from_seed(seed);
        let x = uniform_solution(graph.n(), &mut rng);
        let eval = IncrementalEvaluator::new(graph, problem, x);
        let fitness = eval.scalar();
        let mut ea = OnePlusOneEa {
            graph,
            problem,
            seed,
            rng,
            eval,
            fitness,
            evaluations: 1,
            evals_to_feasible: None,
            first_feasible_size: None,
            flips: Vec::with_capacity(8),
        };
        ea.note_feasibility();
        Ok(ea)
    }

    fn note_feasibility(&mut self) {
        if self.evals_to_feasible.is_none() && self.eval.is_feasible() {
            self.evals_to_feasible = Some(self.evaluations);
            self.first_feasible_size = Some(self.eval.ones());
        }
    }

    pub fn step(&mut self) -> EaStep {
        sample_flips(self.graph.n(), &mut self.rng, &mut self.flips);
        for &v in &self.flips {
            self.eval.flip(v);
        }
        let offspring = self.eval.scalar();
        self.evaluations += 1;
        let accepted = match self.problem.sense() {
            Sense::Minimize => offspring <= self.fitness,
            Sense::Maximize => offspring >= self.fitness,
        };
        if accepted {
            self.fitness = offspring;
            self.note_feasibility();
        } else {
            for &v in self.flips.iter().rev() {
                self.eval.flip(v);
            }
        }
        EaStep {
            accepted,
            offspring_fitness: offspring,
            flipped: self.flips.len(),
        }
    }

    pub fn incumbent(&self) -> &Solution {
        self.eval.solution()
    }

    pub fn fitness(&self) -> i64 {
        self.fitness
    }

    /// Penalty term of the incumbent.
    pub fn potential(&self) -> usize {
        self.eval.potential()
    }

    pub fn is_feasible(&self) -> bool {
        self.eval.is_feasible()
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    fn target_reached(&self, budget: &RunBudget) -> bool {
        budget.target_met(self.problem, self.is_feasible(), self.eval.ones())
    }

    pub fn run(mut self, budget: &RunBudget) -> TrialRecord {
        let start = Instant::now();
        while self.evaluations < budget.max_evaluations && !self.target_reached(budget) {
            self.step();
        }
        let feasible = self.is_feasible();
        TrialRecord {
            seed: self.seed,
            problem: self.problem,
            algorithm: Algorithm::Ea,
            n: self.graph.n(),
            m: self.graph.m(),
            evals_to_feasible: self.evals_to_feasible,
            evals_total: self.evaluations,
            best_feasible_size: feasible.then(|| self.eval.ones()),
            first_feasible_size: self.first_feasible_size,
            final_solution: self.eval.solution().clone(),
            archive_snapshot: Vec::new(),
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub fn one_plus_one_ea(g: &Graph, p: Problem, budget: &RunBudget, seed: u64) -> Result<TrialRecord> {
    budget.validate()?;
    Ok(OnePlusOneEa::new(g, p, seed)?.run(budget))
}
