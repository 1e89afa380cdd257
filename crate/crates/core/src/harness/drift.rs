use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engines::{Algorithm, OnePlusOneEa, RunBudget};
use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::graph::Graph;

/// Potential before one EA iteration and how much that iteration removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriftSample {
    pub iteration: u64,
    pub potential: usize,
    pub decrease: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftBin {
    pub potential: usize,
    pub samples: usize,
    pub mean_decrease: f64,
    /// `s / (e n)`.
    pub required: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub problem: Problem,
    pub n: usize,
    pub trials: usize,
    pub base_seed: u64,
    pub total_samples: usize,
    /// Populated bins in increasing potential order.
    pub bins: Vec<DriftBin>,
    /// Potentials whose bin has `ratio < 1`.
    pub flagged: Vec<usize>,
}

/// Samples from one EA run, collected until the incumbent is feasible or
/// `max_evaluations` is spent.
pub fn drift_samples(g: &Graph, p: Problem, seed: u64, max_evaluations: u64) -> Result<Vec<DriftSample>> {
    if !matches!(p, Problem::Mds | Problem::Cds | Problem::Mvc | Problem::MvcDom) {
        return Err(Error::usage(format!("drift is measured for covering problems, not {p}")));
    }
    let mut ea = OnePlusOneEa::new(g, p, seed)?;
    let mut samples = Vec::new();
    while !ea.is_feasible() && ea.evaluations() < max_evaluations {
        let before = ea.potential();
        let iteration = ea.evaluations();
        ea.step();
        samples.push(DriftSample {
            iteration,
            potential: before,
            decrease: before as i64 - ea.potential() as i64,
        });
    }
    Ok(samples)
}

/// Bins infeasible-phase samples of `trials` EA runs (seeds `seed`,
/// `seed + 1`, ...) by potential and compares each bin's mean decrease with
/// `s / (e n)`.
pub fn measure_drift(g: &Graph, p: Problem, trials: usize, seed: u64) -> Result<DriftReport> {
    let cap = RunBudget::default_for(g.n(), p, Algorithm::Ea).max_evaluations.saturating_mul(10);
    let runs: Vec<Vec<DriftSample>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| drift_samples(g, p, seed + i, cap))
        .collect::<Result<_>>()?;
    let mut sums: BTreeMap<usize, (usize, i64)> = BTreeMap::new();
    for s in runs.iter().flatten() {
        let e = sums.entry(s.potential).or_default();
        e.0 += 1;
        e.1 += s.decrease;
    }
    let n = g.n() as f64;
    let bins: Vec<DriftBin> = sums
        .into_iter()
        .filter(|&(s, (count, _))| s > 0 && count > 0)
        .map(|(s, (count, total))| {
            let mean_decrease = total as f64 / count as f64;
            let required = s as f64 / (std::f64::consts::E * n);
            DriftBin {
                potential: s,
                samples: count,
                mean_decrease,
                required,
                ratio: mean_decrease / required,
            }
        })
        .collect();
    Ok(DriftReport {
        problem: p,
        n: g.n(),
        trials,
        base_seed: seed,
        total_samples: runs.iter().map(Vec::len).sum(),
        flagged: bins.iter().filter(|b| b.ratio < 1.0).map(|b| b.potential).collect(),
        bins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_deterministic_and_stop_when_feasible() {
        let g = Graph::cycle(30);
        let a = drift_samples(&g, Problem::Mds, 4, 100_000).unwrap();
        let b = drift_samples(&g, Problem::Mds, 4, 100_000).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.potential > 0 && s.decrease >= 0));
        assert!(drift_samples(&g, Problem::Mis, 4, 10).is_err());
    }

    #[test]
    fn report_omits_empty_bins() {
        let g = Graph::cycle(40);
        let r = measure_drift(&g, Problem::Mds, 5, 1).unwrap();
        assert!(r.bins.iter().all(|b| b.samples > 0 && b.potential > 0));
        assert_eq!(r.total_samples, r.bins.iter().map(|b| b.samples).sum::<usize>());
        assert!(r.bins.windows(2).all(|w| w[0].potential < w[1].potential));
    }
}
