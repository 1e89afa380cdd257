//! Scale-free graph generators and edge-list loading.

use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDocument};
use crate::rng::{rng_from_seed, GENERATOR_ID};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GraphModel {
    Pa,
    ChungLu,
    EdgeList,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: GraphModel,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub attach_m: usize,
    #[serde(default)]
    pub beta_target: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl GenSpec {
    pub fn pa(n: usize, attach_m: usize, seed: u64) -> Self {
        GenSpec {
            model: GraphModel::Pa,
            n,
            attach_m,
            beta_target: 0.0,
            seed,
            path: None,
        }
    }

    pub fn chung_lu(n: usize, beta_target: f64, seed: u64) -> Self {
        GenSpec {
            model: GraphModel::ChungLu,
            n,
            attach_m: 0,
            beta_target,
            seed,
            path: None,
        }
    }

    pub fn edge_list(path: impl Into<PathBuf>) -> Self {
        GenSpec {
            model: GraphModel::EdgeList,
            n: 0,
            attach_m: 0,
            beta_target: 0.0,
            seed: 0,
            path: Some(path.into()),
        }
    }

    /// Provenance object embedded in generated graph files.
    pub fn meta(&self) -> serde_json::Value {
        let params = match self.model {
            GraphModel::Pa => serde_json::json!({"n": self.n, "attach_m": self.attach_m}),
            GraphModel::ChungLu => {
                serde_json::json!({"n": self.n, "beta_target": self.beta_target})
            }
            GraphModel::EdgeList => serde_json::json!({"path": self.path}),
        };
        serde_json::json!({
            "model": self.model,
            "params": params,
            "seed": self.seed,
            "generator-id": GENERATOR_ID,
        })
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match spec.model {
        GraphModel::Pa => gen_preferential_attachment(spec),
        GraphModel::ChungLu => gen_chung_lu(spec),
        GraphModel::EdgeList => {
            let path = spec
                .path
                .as_ref()
                .ok_or_else(|| Error::usage("edge-list model needs a path"))?;
            load_graph(path)
        }
    }
}

/// Graph document with provenance, ready to be written as JSON.
pub fn generate_document(spec: &GenSpec) -> Result<GraphDocument> {
    let g = generate(spec)?;
    Ok(GraphDocument::from_graph(&g, Some(spec.meta())))
}

/// Barabasi-Albert growth from a clique on `attach_m + 1` vertices. Each
/// new vertex links to `attach_m` distinct earlier vertices drawn with
/// probability proportional to degree.
pub fn gen_preferential_attachment(spec: &GenSpec) -> Result<Graph> {
    let (n, m) = (spec.n, spec.attach_m);
    if m == 0 || m >= n {
        return Err(Error::usage(format!(
            "preferential attachment needs 1 <= attach_m < n, got attach_m = {m}, n = {n}"
        )));
    }
    let mut rng = rng_from_seed(spec.seed);
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + m * (n - m - 1));
    // One entry per edge endpoint, so a uniform pick is degree-proportional.
    let mut endpoints = Vec::with_capacity(2 * edges.capacity());
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let candidate = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &u in &targets {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    Graph::new(n, edges)
}

/// `min(1, w_u w_v / sum(w))`.
pub fn chung_lu_edge_probability(w_u: f64, w_v: f64, total_weight: f64) -> f64 {
    (w_u * w_v / total_weight).min(1.0)
}

/// Chung-Lu graph with weights `w_i = (n / i)^(1 / (beta_target - 1))`.
/// Isolated vertices are dropped and the rest re-indexed in order.
pub fn gen_chung_lu(spec: &GenSpec) -> Result<Graph> {
    let n = spec.n;
    let beta = spec.beta_target;
    if !(beta.is_finite() && beta > 2.0) {
        return Err(Error::usage(format!("Chung-Lu needs beta_target > 2, got {beta}")));
    }
    if n == 0 {
        return Err(Error::usage("Chung-Lu needs n >= 1"));
    }
    let exponent = 1.0 / (beta - 1.0);
    let weights: Vec<f64> = (1..=n)
        .map(|i| (n as f64 / i as f64).powf(exponent))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut rng = rng_from_seed(spec.seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = chung_lu_edge_probability(weights[u], weights[v], total);
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    for &(u, v) in &edges {
        new_id[u] = 0;
        new_id[v] = 0;
    }
    let mut next = 0;
    for id in new_id.iter_mut().filter(|id| **id == 0) {
        *id = next;
        next += 1;
    }
    Graph::new(next, edges.into_iter().map(|(u, v)| (new_id[u], new_id[v])))
}

/// Parses whitespace-separated `u v` pairs, one per line. Blank lines and
/// lines starting with `#` are skipped. The vertex count is one past the
/// largest id.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next_id = || -> Result<usize> {
            let token = fields.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex ids".into(),
            })?;
            token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex id {token:?}"),
            })
        };
        let (u, v) = (next_id()?, next_id()?);
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "trailing tokens after edge".into(),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                message: format!("self-loop on vertex {u}"),
            });
        }
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Loads either a JSON graph document or a plain edge list, by content.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Graph::from_json(&text)
    } else {
        parse_edge_list(&text)
    }
}
