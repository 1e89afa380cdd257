use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fitness::Problem;
use crate::graph::Graph;
use crate::oracles::exact::exact_solve;
use crate::oracles::greedy::{greedy_cds, greedy_mds, greedy_mis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBounds {
    pub lower: usize,
    pub upper: usize,
}

/// Scans edges in order and keeps each one whose endpoints are both free.
pub fn greedy_maximal_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mut used = vec![false; g.n()];
    let mut matching = Vec::new();
    for &(u, v) in g.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            matching.push((u, v));
        }
    }
    matching
}

/// Cheap bracket on the optimum size for graphs too large to solve exactly.
pub fn size_bounds(g: &Graph, p: Problem) -> Result<SizeBounds> {
    let n = g.n();
    let mds_lower = n.div_ceil(g.max_degree() + 1);
    Ok(match p.feasibility_class() {
        Problem::Mds => SizeBounds {
            lower: mds_lower,
            upper: greedy_mds(g).optimum_size,
        },
        Problem::Cds => SizeBounds {
            lower: mds_lower,
            upper: greedy_cds(g)?.optimum_size,
        },
        Problem::Mis => SizeBounds {
            lower: greedy_mis(g).optimum_size,
            upper: n - greedy_maximal_matching(g).len(),
        },
        _ => {
            let k = greedy_maximal_matching(g).len();
            SizeBounds {
                lower: k,
                upper: 2 * k,
            }
        }
    })
}

/// Checks `n_k <= n (1 - 1/OPT)^k` along the greedy MDS trace.
pub fn verify_greedy_mds_recurrence(g: &Graph, limit: usize) -> Result<bool> {
    let opt = exact_solve(g, Problem::Mds, limit)?.optimum_size as u128;
    if opt == 0 {
        return Ok(true);
    }
    let n = g.n() as u128;
    let trace = greedy_mds(g).sequence_trace;
    Ok(trace.iter().enumerate().all(|(i, step)| {
        let k = i as u32 + 1;
        // n_k * OPT^k <= n * (OPT - 1)^k, exactly when it fits.
        let lhs = opt.checked_pow(k).and_then(|p| p.checked_mul(step.residual as u128));
        let rhs = (opt - 1).checked_pow(k).and_then(|p| p.checked_mul(n));
        match (lhs, rhs) {
            (Some(l), Some(r)) => l <= r,
            _ => {
                let q = 1.0 - 1.0 / opt as f64;
                step.residual as f64 <= n as f64 * q.powi(k as i32) * (1.0 + 1e-12)
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(size_bounds(&Graph::star(4), Problem::Mds).unwrap(), SizeBounds { lower: 1, upper: 1 });
        assert_eq!(size_bounds(&Graph::complete(3), Problem::Mvc).unwrap(), SizeBounds { lower: 1, upper: 2 });
        assert_eq!(size_bounds(&Graph::complete(2), Problem::Mis).unwrap(), SizeBounds { lower: 1, upper: 1 });
    }

    #[test]
    fn recurrence_examples() {
        assert!(verify_greedy_mds_recurrence(&Graph::star(4), 26).unwrap());
        assert!(verify_greedy_mds_recurrence(&Graph::path(3), 26).unwrap());
        assert!(verify_greedy_mds_recurrence(&Graph::path(30), 26).is_err());
    }
}
