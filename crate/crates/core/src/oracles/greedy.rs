use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::graph::{Graph, Solution};
use crate::oracles::bounds::greedy_maximal_matching;
use crate::oracles::{OracleMethod, OracleResult, TraceStep};

/// The greedy construction for `p`. MVC falls back to the endpoints of a
/// greedy maximal matching.
pub fn greedy(g: &Graph, p: Problem) -> Result<OracleResult> {
    match p.feasibility_class() {
        Problem::Mds => Ok(greedy_mds(g)),
        Problem::Cds => greedy_cds(g),
        Problem::Mis => Ok(greedy_mis(g)),
        _ => {
            let matching = greedy_maximal_matching(g);
            let witness = Solution::from_vertices(g.n(), matching.iter().flat_map(|&(u, v)| [u, v]));
            Ok(OracleResult {
                problem: p,
                optimum_size: witness.count_ones(),
                witness,
                method: OracleMethod::Greedy,
                sequence_trace: Vec::new(),
            })
        }
    }
}

fn finish(problem: Problem, n: usize, trace: Vec<TraceStep>) -> OracleResult {
    let witness = Solution::from_vertices(n, trace.iter().map(|s| s.vertex));
    OracleResult {
        problem,
        optimum_size: witness.count_ones(),
        witness,
        method: OracleMethod::Greedy,
        sequence_trace: trace,
    }
}

/// Adds the vertex covering the most undominated vertices until all are
/// dominated. The trace holds the undominated count after each pick.
pub fn greedy_mds(g: &Graph) -> OracleResult {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut chosen = vec![false; n];
    let mut open = n;
    let mut trace = Vec::new();
    while open > 0 {
        let gain = |v: usize| {
            usize::from(!dominated[v]) + g.neighbors(v).iter().filter(|&&u| !dominated[u]).count()
        };
        let (v, _) = (0..n)
            .filter(|&v| !chosen[v])
            .map(|v| (v, gain(v)))
            .fold((usize::MAX, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        chosen[v] = true;
        for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if !dominated[u] {
                dominated[u] = true;
                open -= 1;
            }
        }
        trace.push(TraceStep { vertex: v, residual: open });
    }
    finish(Problem::Mds, n, trace)
}

/// Adds the vertex with the largest drop in `u + w` until the selection is
/// a connected dominating set. The trace holds `u + w` after each pick.
pub fn greedy_cds(g: &Graph) -> Result<OracleResult> {
    Problem::Cds.check_graph(g)?;
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut chosen = vec![false; n];
    let mut open = n;
    let mut components = 0usize;
    let mut trace = Vec::new();
    let mut label = vec![usize::MAX; n];
    while open > 0 || components > 1 {
        label_components(g, &chosen, &mut label);
        let mut best: Option<(usize, i64)> = None;
        let mut seen = Vec::new();
        for v in (0..n).filter(|&v| !chosen[v]) {
            let gain = usize::from(!dominated[v])
                + g.neighbors(v).iter().filter(|&&u| !dominated[u]).count();
            seen.clear();
            seen.extend(g.neighbors(v).iter().filter(|&&u| chosen[u]).map(|&u| label[u]));
            seen.sort_unstable();
            seen.dedup();
            let drop = gain as i64 + seen.len() as i64 - 1;
            if best.is_none_or(|(_, d)| drop > d) {
                best = Some((v, drop));
            }
        }
        let (v, _) = best.ok_or_else(|| Error::Domain("no vertex left to add".into()))?;
        chosen[v] = true;
        for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if !dominated[u] {
                dominated[u] = true;
                open -= 1;
            }
        }
        label_components(g, &chosen, &mut label);
        components = count_labels(&chosen, &label);
        trace.push(TraceStep {
            vertex: v,
            residual: open + components,
        });
    }
    Ok(finish(Problem::Cds, n, trace))
}

fn label_components(g: &Graph, chosen: &[bool], label: &mut [usize]) {
    label.fill(usize::MAX);
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if !chosen[s] || label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if chosen[u] && label[u] == usize::MAX {
                    label[u] = s;
                    stack.push(u);
                }
            }
        }
    }
}

fn count_labels(chosen: &[bool], label: &[usize]) -> usize {
    (0..chosen.len()).filter(|&v| chosen[v] && label[v] == v).count()
}

/// Takes a minimum-degree vertex of the residual graph and deletes its
/// closed neighbourhood until nothing is left. The trace holds the number
/// of residual vertices after each pick.
pub fn greedy_mis(g: &Graph) -> OracleResult {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.degrees().collect();
    let mut remaining = n;
    let mut trace = Vec::new();
    while remaining > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| degree[v])
            .expect("remaining > 0");
        let removed: Vec<usize> = std::iter::once(v)
            .chain(g.neighbors(v).iter().copied().filter(|&u| alive[u]))
            .collect();
        for &u in &removed {
            alive[u] = false;
        }
        for &u in &removed {
            for &w in g.neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
        remaining -= removed.len();
        trace.push(TraceStep {
            vertex: v,
            residual: remaining,
        });
    }
    finish(Problem::Mis, n, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitness::is_feasible;

    fn picks(r: &OracleResult) -> Vec<usize> {
        r.sequence_trace.iter().map(|s| s.vertex).collect()
    }

    #[test]
    fn greedy_mds_examples() {
        let star = greedy_mds(&Graph::star(4));
        assert_eq!(picks(&star), vec![0]);
        assert_eq!(star.sequence_trace[0].residual, 0);
        assert_eq!(greedy_mds(&Graph::path(3)).witness.iter_ones().collect::<Vec<_>>(), vec![1]);
        assert_eq!(greedy_mds(&Graph::complete(2)).optimum_size, 1);
        assert_eq!(greedy_mds(&Graph::empty(3)).optimum_size, 3);
    }

    #[test]
    fn greedy_cds_examples() {
        let p3 = greedy_cds(&Graph::path(3)).unwrap();
        assert_eq!(picks(&p3), vec![1]);
        assert_eq!(p3.sequence_trace[0].residual, 1);
        let p5 = greedy_cds(&Graph::path(5)).unwrap();
        assert_eq!(p5.witness.iter_ones().collect::<Vec<_>>(), vec![1, 2, 3]);
        let f: Vec<usize> = p5.sequence_trace.iter().map(|s| s.residual).collect();
        assert_eq!(f, vec![3, 2, 1]);
        assert_eq!(greedy_cds(&Graph::complete(2)).unwrap().optimum_size, 1);
        assert!(greedy_cds(&Graph::empty(2)).is_err());
    }

    #[test]
    fn greedy_mis_examples() {
        let star = greedy_mis(&Graph::star(4));
        assert_eq!(star.witness.iter_ones().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(greedy_mis(&Graph::complete(3)).optimum_size, 1);
        assert_eq!(picks(&greedy_mis(&Graph::path(3))), vec![0, 2]);
    }

    #[test]
    fn greedy_witnesses_are_feasible() {
        for g in [Graph::cycle(7), Graph::star(5), Graph::path(6), Graph::complete(4)] {
            for p in Problem::ALL {
                let r = greedy(&g, p).unwrap();
                assert!(is_feasible(&g, &r.witness, p).unwrap(), "{p} on n={}", g.n());
            }
        }
    }
}
