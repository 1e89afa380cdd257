//! Undirected simple graphs, vertex-subset solutions, and the covering
//! queries shared by every fitness function.
//!
//! Vertices are `0..n`. A selected vertex dominates itself and its
//! neighbours.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Pairs may come in either
    /// orientation; duplicates collapse. Self-loops and out-of-range ids are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::usage(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::usage(format!("self-loop on vertex {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("edgeless graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    /// Star `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn degree_sum(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// True for the empty graph and for any graph with a single component.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = vec![true; self.n];
        count_components(self, &all) == 1
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::usage(format!("vertex {v} out of range 0..{}", self.n)))
        }
    }

    pub(crate) fn check_solution(&self, x: &Solution) -> Result<()> {
        if x.len() == self.n {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "solution has length {} but the graph has {} vertices",
                x.len(),
                self.n
            )))
        }
    }

    /// `u(x)`: vertices with no selected vertex in their closed neighbourhood.
    pub fn undominated_count(&self, x: &Solution) -> Result<usize> {
        self.check_solution(x)?;
        Ok((0..self.n)
            .filter(|&v| !x.get(v) && !self.adjacency[v].iter().any(|&u| x.get(u)))
            .count())
    }

    /// Edges with both endpoints unselected.
    pub fn uncovered_edge_count(&self, x: &Solution) -> Result<usize> {
        self.check_solution(x)?;
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| !x.get(u) && !x.get(v))
            .count())
    }

    /// `w(x)`: connected components of the subgraph induced by the selected
    /// vertices. Zero for the empty selection.
    pub fn selected_component_count(&self, x: &Solution) -> Result<usize> {
        self.check_solution(x)?;
        Ok(count_components(self, &x.bits))
    }

    /// `sum_i x_i sum_j x_j e_ij`, i.e. twice the number of edges inside the
    /// selection.
    pub fn conflict_count(&self, x: &Solution) -> Result<usize> {
        self.check_solution(x)?;
        Ok(2 * self.edges.iter().filter(|&&(u, v)| x.get(u) && x.get(v)).count())
    }

    pub fn is_dominating(&self, x: &Solution) -> Result<bool> {
        Ok(self.undominated_count(x)? == 0)
    }
}

/// Components of the subgraph induced by `selected`.
pub(crate) fn count_components(g: &Graph, selected: &[bool]) -> usize {
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::new();
    let mut components = 0;
    for start in 0..g.n {
        if !selected[start] || seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &u in &g.adjacency[v] {
                if selected[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    components
}

/// A vertex subset encoded as a length-`n` bit string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    bits: Vec<bool>,
}

impl Solution {
    pub fn zeros(n: usize) -> Self {
        Solution { bits: vec![false; n] }
    }

    pub fn ones(n: usize) -> Self {
        Solution { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Solution { bits }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut x = Solution::zeros(n);
        for v in vertices {
            x.set(v, true);
        }
        x
    }

    /// Low `n` bits of `mask`, bit `v` standing for vertex `v`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask encoding supports at most 64 vertices");
        Solution {
            bits: (0..n).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.bits.len() <= 64, "mask encoding supports at most 64 vertices");
        self.iter_ones().fold(0, |m, v| m | 1 << v)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> bool {
        self.bits[v]
    }

    #[inline]
    pub fn set(&mut self, v: usize, value: bool) {
        self.bits[v] = value;
    }

    #[inline]
    pub fn flip(&mut self, v: usize) {
        self.bits[v] = !self.bits[v];
    }

    /// `|x|_1`.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn hamming_distance(&self, other: &Solution) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Solution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::usage(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Solution::from_bits)
    }
}

impl Serialize for Solution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Incrementally maintained closed-neighbourhood cover counts for one
/// solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationState {
    solution: Solution,
    cover_count: Vec<u32>,
    undominated: usize,
}

impl DominationState {
    pub fn new(g: &Graph, x: Solution) -> Result<Self> {
        g.check_solution(&x)?;
        let mut cover_count = vec![0u32; g.n()];
        for v in x.iter_ones() {
            cover_count[v] += 1;
            for &u in g.neighbors(v) {
                cover_count[u] += 1;
            }
        }
        let undominated = cover_count.iter().filter(|&&c| c == 0).count();
        Ok(DominationState {
            solution: x,
            cover_count,
            undominated,
        })
    }

    /// Toggles vertex `v` and updates the counts touched by its closed
    /// neighbourhood.
    pub fn apply_flip(&mut self, g: &Graph, v: usize) -> Result<()> {
        g.check_vertex(v)?;
        self.flip_unchecked(g, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn flip_unchecked(&mut self, g: &Graph, v: usize) {
        if self.solution.get(v) {
            self.solution.set(v, false);
            self.uncover(v);
            for &u in g.neighbors(v) {
                self.uncover(u);
            }
        } else {
            self.solution.set(v, true);
            self.cover(v);
            for &u in g.neighbors(v) {
                self.cover(u);
            }
        }
    }

    #[inline]
    fn cover(&mut self, v: usize) {
        if self.cover_count[v] == 0 {
            self.undominated -= 1;
        }
        self.cover_count[v] += 1;
    }

    #[inline]
    fn uncover(&mut self, v: usize) {
        self.cover_count[v] -= 1;
        if self.cover_count[v] == 0 {
            self.undominated += 1;
        }
    }

    pub fn undominated(&self) -> usize {
        self.undominated
    }

    pub fn cover_count(&self, v: usize) -> u32 {
        self.cover_count[v]
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }
}

/// On-disk graph document: `{"n": .., "edges": [[u, v], ..]}` with an
/// optional generator `meta` object.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph, meta: Option<serde_json::Value>) -> Self {
        GraphDocument {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            meta,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph document serializes")
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDocument::from_graph(self, None)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<GraphDocument>(text)
            .map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?
            .to_graph()
    }
}
