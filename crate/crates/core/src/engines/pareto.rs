//! Pareto dominance on objective pairs and the GSEMO archive.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::fitness::{ObjectiveVector, Sense};
use crate::graph::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    /// At least as good everywhere and better somewhere.
    Strict,
    /// Equal in every component.
    Weak,
    None,
}

impl Dominance {
    /// Strict or weak.
    pub fn at_least_weak(self) -> bool {
        self != Dominance::None
    }
}

/// Whether `p` dominates `q` when both components are optimised in
/// direction `sense`.
pub fn dominates(p: ObjectiveVector, q: ObjectiveVector, sense: Sense) -> Dominance {
    let better_or_equal = |a: i64, b: i64| match sense {
        Sense::Minimize => a <= b,
        Sense::Maximize => a >= b,
    };
    if !(better_or_equal(p.0, q.0) && better_or_equal(p.1, q.1)) {
        Dominance::None
    } else if p == q {
        Dominance::Weak
    } else {
        Dominance::Strict
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchiveEntry {
    pub solution: Solution,
    pub objectives: ObjectiveVector,
    pub feasible: bool,
}

/// Mutually non-dominated population with one solution per objective
/// vector.
#[derive(Clone, Debug)]
pub struct ParetoArchive {
    sense: Sense,
    entries: Vec<ArchiveEntry>,
}

impl ParetoArchive {
    pub fn new(sense: Sense) -> Self {
        ParetoArchive {
            sense,
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> &ArchiveEntry {
        &self.entries[rng.random_range(0..self.entries.len())]
    }

    /// Inserts `candidate` unless some member is at least as good in every
    /// objective (an identical vector included). On insertion, members the
    /// candidate dominates are dropped. Returns whether it was inserted.
    pub fn offer(&mut self, candidate: ArchiveEntry) -> bool {
        let sense = self.sense;
        if self
            .entries
            .iter()
            .any(|z| dominates(z.objectives, candidate.objectives, sense).at_least_weak())
        {
            return false;
        }
        self.entries
            .retain(|z| !dominates(candidate.objectives, z.objectives, sense).at_least_weak());
        self.entries.push(candidate);
        true
    }

    /// Checks pairwise non-dominance and the `n + 1` size cap.
    pub fn audit(&self, n: usize) -> Result<(), String> {
        if self.entries.len() > n + 1 {
            return Err(format!("archive holds {} > n + 1 entries", self.entries.len()));
        }
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if dominates(a.objectives, b.objectives, self.sense).at_least_weak()
                    || dominates(b.objectives, a.objectives, self.sense).at_least_weak()
                {
                    return Err(format!(
                        "archive members {:?} and {:?} are comparable",
                        a.objectives, b.objectives
                    ));
                }
            }
        }
        Ok(())
    }

    /// Best feasible member by size: smallest when minimising, largest when
    /// maximising.
    pub fn best_feasible(&self) -> Option<&ArchiveEntry> {
        let feasible = self.entries.iter().filter(|e| e.feasible);
        match self.sense {
            Sense::Minimize => feasible.min_by_key(|e| (e.solution.count_ones(), e.objectives)),
            Sense::Maximize => feasible.max_by_key(|e| (e.solution.count_ones(), e.objectives)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64) -> ObjectiveVector {
        ObjectiveVector(a, b)
    }

    fn entry(a: i64, b: i64) -> ArchiveEntry {
        ArchiveEntry {
            solution: Solution::zeros(3),
            objectives: v(a, b),
            feasible: a == 0,
        }
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominates(v(0, 1), v(2, 1), Sense::Minimize), Dominance::Strict);
        assert_eq!(dominates(v(3, 3), v(3, 3), Sense::Minimize), Dominance::Weak);
        assert_eq!(dominates(v(0, 2), v(1, 1), Sense::Minimize), Dominance::None);
        assert_eq!(dominates(v(2, 0), v(1, 0), Sense::Maximize), Dominance::Strict);
        assert_eq!(dominates(v(1, 0), v(2, 0), Sense::Maximize), Dominance::None);
    }

    #[test]
    fn archive_rejects_equal_and_dominated() {
        let mut a = ParetoArchive::new(Sense::Minimize);
        assert!(a.offer(entry(3, 0)));
        assert!(a.offer(entry(1, 1)));
        assert!(!a.offer(entry(1, 1)));
        assert!(!a.offer(entry(2, 2)));
        assert!(a.offer(entry(0, 1)));
        assert_eq!(a.len(), 2);
        assert!(a.audit(3).is_ok());
        assert_eq!(a.best_feasible().unwrap().objectives, v(0, 1));
    }
}
