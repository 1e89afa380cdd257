//! Brute-force references and graph corpora shared by the integration
//! tests. Everything here enumerates subsets directly and does not use the
//! library's solvers.

#![allow(dead_code)]

use plbea::fitness::{self, Problem, Sense};
use plbea::generators::{generate, GenSpec};
use plbea::graph::{Graph, Solution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Optimum size by checking every subset.
pub fn naive_optimum(g: &Graph, p: Problem) -> usize {
    let n = g.n();
    assert!(n <= 20, "naive enumeration is for tiny graphs");
    let sizes = (0u64..1 << n).filter_map(|mask| {
        let x = Solution::from_mask(n, mask);
        fitness::is_feasible(g, &x, p).unwrap().then(|| x.count_ones())
    });
    match p.sense() {
        Sense::Minimize => sizes.min().unwrap(),
        Sense::Maximize => sizes.max().unwrap(),
    }
}

/// Every dominating set of `g`.
pub fn all_dominating_sets(g: &Graph) -> Vec<Solution> {
    (1u64..1 << g.n())
        .map(|mask| Solution::from_mask(g.n(), mask))
        .filter(|x| g.is_dominating(x).unwrap())
        .collect()
}

/// G(n, p) from its own seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_9a4b);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A random connected graph: a random spanning tree plus G(n, p) edges.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ec_7ed);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    edges.extend(random_graph(n, p, seed).edges().iter().copied());
    Graph::new(n, edges).unwrap()
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn named_small_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("path{n}"), Graph::path(n)));
        out.push((format!("complete{n}"), Graph::complete(n)));
        out.push((format!("empty{n}"), Graph::empty(n)));
    }
    for n in 3..=8 {
        out.push((format!("cycle{n}"), Graph::cycle(n)));
    }
    for leaves in 1..=7 {
        out.push((format!("star{leaves}"), Graph::star(leaves)));
    }
    out
}

pub fn pa(n: usize, m: usize, seed: u64) -> Graph {
    generate(&GenSpec::pa(n, m, seed)).unwrap()
}

/// MIS fitness after applying a swap.
fn swapped(x: &Solution, remove: &[usize], add: &[usize]) -> Solution {
    let mut y = x.clone();
    for &u in remove {
        y.set(u, false);
    }
    for &v in add {
        y.set(v, true);
    }
    y
}

/// Literal 3-local-optimum test: every `U` inside the set and `T` outside
/// with `|U| + |T| <= 3`.
pub fn literal_3_local(g: &Graph, x: &Solution) -> bool {
    let inside: Vec<usize> = x.iter_ones().collect();
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !x.get(v)).collect();
    let base = fitness::mis_scalar(g, x).unwrap();
    let subsets = |pool: &[usize], k: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|s: Vec<usize>| {
                    let start = s.last().map_or(0, |&l| pool.iter().position(|&p| p == l).unwrap() + 1);
                    pool[start..].iter().map(move |&v| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        out
    };
    for ku in 0..=3 {
        for kt in 0..=3 - ku {
            for u in subsets(&inside, ku) {
                for t in subsets(&outside, kt) {
                    if fitness::mis_scalar(g, &swapped(x, &u, &t)).unwrap() > base {
                        return false;
                    }
                }
            }
        }
    }
    true
}
