//! Branch-and-bound solvers over 64-bit vertex masks.

use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::graph::{Graph, Solution};
use crate::oracles::greedy::{greedy_cds, greedy_mds, greedy_mis};
use crate::oracles::{OracleMethod, OracleResult};

pub const DEFAULT_EXACT_LIMIT: usize = 26;
/// Hard cap imposed by the mask representation.
pub const MAX_EXACT_LIMIT: usize = 64;

/// `PLBEA_EXACT_LIMIT` if set and valid, else [`DEFAULT_EXACT_LIMIT`].
pub fn exact_limit_from_env() -> usize {
    std::env::var("PLBEA_EXACT_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
        .map_or(DEFAULT_EXACT_LIMIT, |l: usize| l.min(MAX_EXACT_LIMIT))
}

struct Masks {
    n: usize,
    full: u64,
    adj: Vec<u64>,
    closed: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let adj: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
            .collect();
        let closed = adj.iter().enumerate().map(|(v, &a)| a | 1 << v).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Masks { n, full, adj, closed }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// True optimum for `p` on graphs with at most `limit` vertices.
pub fn exact_solve(g: &Graph, p: Problem, limit: usize) -> Result<OracleResult> {
    let limit = limit.min(MAX_EXACT_LIMIT);
    if g.n() > limit {
        return Err(Error::InstanceTooLarge { n: g.n(), limit });
    }
    p.check_graph(g)?;
    let masks = Masks::new(g);
    let mask = match p.feasibility_class() {
        Problem::Mds => solve_mds(g, &masks),
        Problem::Mvc => solve_mvc(&masks),
        Problem::Cds => solve_cds(g, &masks),
        Problem::Mis => solve_mis(g, &masks),
        Problem::MvcDom => unreachable!("folded into Mvc"),
    };
    Ok(OracleResult {
        problem: p,
        optimum_size: mask.count_ones() as usize,
        witness: Solution::from_mask(g.n(), mask),
        method: OracleMethod::Exact,
        sequence_trace: Vec::new(),
    })
}

struct MdsSearch<'a> {
    m: &'a Masks,
    best: u64,
    best_size: u32,
}

impl MdsSearch<'_> {
    fn search(&mut self, chosen: u64, dominated: u64, excluded: u64) {
        let size = chosen.count_ones();
        if dominated == self.m.full {
            if size < self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return;
        }
        let open = self.m.full & !dominated;
        let candidates = self.m.full & !chosen & !excluded;
        let max_gain = bits(candidates)
            .map(|v| (self.m.closed[v] & open).count_ones())
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let lower = open.count_ones().div_ceil(max_gain);
        if size + lower >= self.best_size {
            return;
        }
        // Branch on the undominated vertex with the fewest ways to be covered.
        let target = bits(open)
            .min_by_key(|&u| (self.m.closed[u] & candidates).count_ones())
            .expect("open is non-empty");
        let mut options: Vec<usize> = bits(self.m.closed[target] & candidates).collect();
        options.sort_by_key(|&v| std::cmp::Reverse((self.m.closed[v] & open).count_ones()));
        let mut excluded = excluded;
        for v in options {
            self.search(chosen | 1 << v, dominated | self.m.closed[v], excluded);
            excluded |= 1 << v;
        }
    }
}

fn solve_mds(g: &Graph, m: &Masks) -> u64 {
    if m.n == 0 {
        return 0;
    }
    let incumbent = greedy_mds(g).witness.to_mask();
    let mut s = MdsSearch {
        m,
        best: incumbent,
        best_size: incumbent.count_ones(),
    };
    s.search(0, 0, 0);
    s.best
}

struct MvcSearch<'a> {
    m: &'a Masks,
    best: u64,
    best_size: u32,
}

impl MvcSearch<'_> {
    /// `removed` holds vertices already decided (in the cover or with all
    /// their edges covered by it).
    fn search(&mut self, cover: u64, removed: u64) {
        let size = cover.count_ones();
        let alive = self.m.full & !removed;
        let (v, deg) = bits(alive)
            .map(|v| (v, (self.m.adj[v] & alive).count_ones()))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .unwrap_or((0, 0));
        if deg == 0 {
            if size < self.best_size {
                self.best = cover;
                self.best_size = size;
            }
            return;
        }
        let edges: u32 = bits(alive).map(|u| (self.m.adj[u] & alive).count_ones()).sum::<u32>() / 2;
        if size + edges.div_ceil(deg) >= self.best_size {
            return;
        }
        self.search(cover | 1 << v, removed | 1 << v);
        let nbrs = self.m.adj[v] & alive;
        self.search(cover | nbrs, removed | nbrs | 1 << v);
    }
}

fn solve_mvc(m: &Masks) -> u64 {
    let mut s = MvcSearch {
        m,
        best: m.full,
        best_size: m.full.count_ones(),
    };
    s.search(0, 0);
    s.best
}

struct MisSearch<'a> {
    m: &'a Masks,
    best: u64,
    best_size: u32,
}

impl MisSearch<'_> {
    fn search(&mut self, chosen: u64, candidates: u64) {
        let size = chosen.count_ones();
        if candidates == 0 {
            if size > self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return;
        }
        if size + candidates.count_ones() <= self.best_size {
            return;
        }
        let degree = |v: usize| (self.m.adj[v] & candidates).count_ones();
        let low = bits(candidates).min_by_key(|&v| degree(v)).expect("non-empty");
        if degree(low) <= 1 {
            // Some maximum independent set contains a vertex of degree <= 1.
            self.search(chosen | 1 << low, candidates & !self.m.closed[low]);
            return;
        }
        let high = bits(candidates)
            .max_by_key(|&v| (degree(v), std::cmp::Reverse(v)))
            .expect("non-empty");
        self.search(chosen | 1 << high, candidates & !self.m.closed[high]);
        self.search(chosen, candidates & !(1 << high));
    }
}

fn solve_mis(g: &Graph, m: &Masks) -> u64 {
    let incumbent = greedy_mis(g).witness.to_mask();
    let mut s = MisSearch {
        m,
        best: incumbent,
        best_size: incumbent.count_ones(),
    };
    s.search(0, m.full);
    s.best
}

/// Enumerates connected vertex sets of one size, each exactly once, with
/// its smallest vertex as the root.
struct CdsSearch<'a> {
    m: &'a Masks,
    k: u32,
    max_cover: u32,
    found: Option<u64>,
}

impl CdsSearch<'_> {
    fn extend(&mut self, set: u64, frontier: u64, neighbourhood: u64, root: usize) {
        if self.found.is_some() {
            return;
        }
        let size = set.count_ones();
        if size == self.k {
            if neighbourhood == self.m.full {
                self.found = Some(set);
            }
            return;
        }
        let missing = (self.m.full & !neighbourhood).count_ones();
        if missing > (self.k - size) * self.max_cover {
            return;
        }
        let mut frontier = frontier;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let above_root = !((1u64 << root) - 1) & !(1u64 << root);
            let fresh = self.m.adj[w] & !neighbourhood & above_root;
            self.extend(
                set | 1 << w,
                frontier | fresh,
                neighbourhood | self.m.closed[w],
                root,
            );
        }
    }
}

fn solve_cds(g: &Graph, m: &Masks) -> u64 {
    if m.n == 0 {
        return 0;
    }
    let upper = greedy_cds(g).expect("graph is connected").witness.to_mask();
    let max_cover = m.closed.iter().map(|c| c.count_ones()).max().unwrap_or(1);
    for k in 1..upper.count_ones() {
        let mut s = CdsSearch {
            m,
            k,
            max_cover,
            found: None,
        };
        for root in 0..m.n {
            let above_root = !((1u64 << root) - 1) & !(1u64 << root);
            s.extend(1 << root, m.adj[root] & above_root, m.closed[root], root);
            if let Some(set) = s.found {
                return set;
            }
        }
    }
    upper
}
