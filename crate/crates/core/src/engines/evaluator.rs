//! Fitness evaluation state that follows single-bit flips, so an offspring
//! costs time proportional to the neighbourhoods it touches rather than to
//! the whole graph.

use crate::fitness::{ObjectiveVector, Problem};
use crate::graph::{count_components, DominationState, Graph, Solution};

#[derive(Clone, Debug)]
pub struct IncrementalEvaluator<'g> {
    graph: &'g Graph,
    problem: Problem,
    x: Solution,
    ones: usize,
    domination: Option<DominationState>,
    uncovered_edges: usize,
    internal_edges: usize,
}

impl<'g> IncrementalEvaluator<'g> {
    /// `x` must have length `graph.n()`.
    pub fn new(graph: &'g Graph, problem: Problem, x: Solution) -> Self {
        debug_assert_eq!(x.len(), graph.n());
        let domination = matches!(problem, Problem::Mds | Problem::MvcDom | Problem::Cds)
            .then(|| DominationState::new(graph, x.clone()).expect("length checked"));
        let uncovered_edges = if matches!(problem, Problem::Mvc | Problem::MvcDom) {
            graph.uncovered_edge_count(&x).expect("length checked")
        } else {
            0
        };
        let internal_edges = if problem == Problem::Mis {
            graph.conflict_count(&x).expect("length checked") / 2
        } else {
            0
        };
        IncrementalEvaluator {
            graph,
            problem,
            ones: x.count_ones(),
            x,
            domination,
            uncovered_edges,
            internal_edges,
        }
    }

    pub fn solution(&self) -> &Solution {
        &self.x
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn flip(&mut self, v: usize) {
        let was_selected = self.x.get(v);
        match self.problem {
            Problem::Mvc | Problem::MvcDom => {
                let unselected = self
                    .graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| !self.x.get(u))
                    .count();
                if was_selected {
                    self.uncovered_edges += unselected;
                } else {
                    self.uncovered_edges -= unselected;
                }
            }
            Problem::Mis => {
                let selected = self
                    .graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| self.x.get(u))
                    .count();
                if was_selected {
                    self.internal_edges -= selected;
                } else {
                    self.internal_edges += selected;
                }
            }
            Problem::Mds | Problem::Cds => {}
        }
        if let Some(dom) = self.domination.as_mut() {
            dom.flip_unchecked(self.graph, v);
        }
        self.x.flip(v);
        if was_selected {
            self.ones -= 1;
        } else {
            self.ones += 1;
        }
    }

    fn undominated(&self) -> usize {
        self.domination.as_ref().map_or(0, DominationState::undominated)
    }

    fn components(&self) -> usize {
        count_components(self.graph, self.x.bits())
    }

    /// The problem's penalty term; zero exactly on feasible solutions
    /// (for `MvcDom`, zero on dominating sets).
    pub fn potential(&self) -> usize {
        match self.problem {
            Problem::Mds | Problem::MvcDom => self.undominated(),
            Problem::Mvc => self.uncovered_edges,
            Problem::Cds => (self.undominated() + self.components()).saturating_sub(1),
            Problem::Mis => 2 * self.internal_edges,
        }
    }

    pub fn is_feasible(&self) -> bool {
        match self.problem {
            Problem::MvcDom => self.uncovered_edges == 0,
            Problem::Cds => self.undominated() == 0 && self.components() == 1,
            _ => self.potential() == 0,
        }
    }

    pub fn scalar(&self) -> i64 {
        let n = self.graph.n() as i64;
        let ones = self.ones as i64;
        match self.problem {
            Problem::Mds | Problem::MvcDom => n * self.undominated() as i64 + ones,
            Problem::Mvc => (n + 1) * self.uncovered_edges as i64 + ones,
            Problem::Cds => {
                let penalty = self.undominated() as i64 + self.components() as i64 - 1;
                n * n * penalty + ones
            }
            Problem::Mis => ones - n * 2 * self.internal_edges as i64,
        }
    }
}

/// Bi-objective fitness evaluated from scratch, without the connectivity
/// precondition check.
pub(crate) fn bi_objective_unchecked(g: &Graph, x: &Solution, p: Problem) -> ObjectiveVector {
    let ones = x.count_ones() as i64;
    match p {
        Problem::Mds | Problem::MvcDom => {
            ObjectiveVector(g.undominated_count(x).expect("length checked") as i64, ones)
        }
        Problem::Mvc => {
            ObjectiveVector(g.uncovered_edge_count(x).expect("length checked") as i64, ones)
        }
        Problem::Cds => {
            let u = g.undominated_count(x).expect("length checked");
            ObjectiveVector((u + count_components(g, x.bits())) as i64, ones)
        }
        Problem::Mis => ObjectiveVector(ones, -(g.conflict_count(x).expect("length checked") as i64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitness;

    #[test]
    fn tracks_scalar_fitness_through_flips() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4), (0, 5)]).unwrap();
        let flips = [3, 0, 5, 3, 1, 1, 2, 4, 0, 5, 2, 2, 3];
        for p in [Problem::Mds, Problem::Mvc, Problem::MvcDom, Problem::Cds, Problem::Mis] {
            let mut ev = IncrementalEvaluator::new(&g, p, Solution::zeros(6));
            for &v in &flips {
                ev.flip(v);
                let x = ev.solution().clone();
                assert_eq!(ev.scalar(), fitness::scalar(&g, &x, p).unwrap(), "{p} at {x}");
                assert_eq!(ev.is_feasible(), fitness::is_feasible(&g, &x, p).unwrap());
                assert_eq!(bi_objective_unchecked(&g, &x, p), fitness::bi_objective(&g, &x, p).unwrap());
            }
        }
    }
}
