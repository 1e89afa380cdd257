//! Penalty-weighted scalar fitness and bi-objective fitness for the four
//! covering problems. All values are exact integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    /// Minimum dominating set.
    Mds,
    /// Minimum vertex cover, penalising uncovered edges.
    Mvc,
    /// Minimum vertex cover driven by the dominating-set fitness
    /// `n u(x) + |x|_1`. Feasibility still means vertex cover.
    MvcDom,
    /// Minimum connected dominating set.
    Cds,
    /// Maximum independent set.
    Mis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::Mds, Problem::Mvc, Problem::Cds, Problem::Mis];

    pub fn sense(self) -> Sense {
        match self {
            Problem::Mis => Sense::Maximize,
            _ => Sense::Minimize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::Mds => "mds",
            Problem::Mvc => "mvc",
            Problem::MvcDom => "mvc-dom",
            Problem::Cds => "cds",
            Problem::Mis => "mis",
        }
    }

    /// Problems whose feasible solutions are the same vertex sets.
    pub fn feasibility_class(self) -> Problem {
        match self {
            Problem::MvcDom => Problem::Mvc,
            p => p,
        }
    }

    pub(crate) fn check_graph(self, g: &Graph) -> Result<()> {
        if self == Problem::Cds && !g.is_connected() {
            return Err(Error::usage(
                "connected dominating set needs a connected graph",
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mds" => Ok(Problem::Mds),
            "mvc" => Ok(Problem::Mvc),
            "mvc-dom" => Ok(Problem::MvcDom),
            "cds" => Ok(Problem::Cds),
            "mis" => Ok(Problem::Mis),
            other => Err(Error::usage(format!("unknown problem {other:?}"))),
        }
    }
}

/// A pair of objective values. Orientation (minimise or maximise both)
/// comes from the problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectiveVector(pub i64, pub i64);

impl ObjectiveVector {
    pub fn values(self) -> [i64; 2] {
        [self.0, self.1]
    }
}

fn ones(x: &Solution) -> i64 {
    x.count_ones() as i64
}

/// `n u(x) + |x|_1`.
pub fn mds_scalar(g: &Graph, x: &Solution) -> Result<i64> {
    Ok(g.n() as i64 * g.undominated_count(x)? as i64 + ones(x))
}

/// `(u(x), |x|_1)`, both minimised.
pub fn mds_bi(g: &Graph, x: &Solution) -> Result<ObjectiveVector> {
    Ok(ObjectiveVector(g.undominated_count(x)? as i64, ones(x)))
}

/// `(n + 1) * uncovered_edges(x) + |x|_1`.
pub fn mvc_scalar(g: &Graph, x: &Solution) -> Result<i64> {
    Ok((g.n() as i64 + 1) * g.uncovered_edge_count(x)? as i64 + ones(x))
}

/// `(uncovered_edges(x), |x|_1)`, both minimised.
pub fn mvc_bi(g: &Graph, x: &Solution) -> Result<ObjectiveVector> {
    Ok(ObjectiveVector(g.uncovered_edge_count(x)? as i64, ones(x)))
}

/// `n^2 (u(x) + w(x) - 1) + |x|_1`; equals `|x|_1` exactly on connected
/// dominating sets.
pub fn cds_scalar(g: &Graph, x: &Solution) -> Result<i64> {
    Problem::Cds.check_graph(g)?;
    let n = g.n() as i64;
    let penalty = g.undominated_count(x)? as i64 + g.selected_component_count(x)? as i64 - 1;
    Ok(n * n * penalty + ones(x))
}

/// `(u(x) + w(x), |x|_1)`, both minimised.
pub fn cds_bi(g: &Graph, x: &Solution) -> Result<ObjectiveVector> {
    Problem::Cds.check_graph(g)?;
    let first = g.undominated_count(x)? + g.selected_component_count(x)?;
    Ok(ObjectiveVector(first as i64, ones(x)))
}

/// `|x|_1 - n * conflicts(x)`, maximised.
pub fn mis_scalar(g: &Graph, x: &Solution) -> Result<i64> {
    Ok(ones(x) - g.n() as i64 * g.conflict_count(x)? as i64)
}

/// `(|x|_1, -conflicts(x))`, both maximised.
pub fn mis_bi(g: &Graph, x: &Solution) -> Result<ObjectiveVector> {
    Ok(ObjectiveVector(ones(x), -(g.conflict_count(x)? as i64)))
}

pub fn scalar(g: &Graph, x: &Solution, p: Problem) -> Result<i64> {
    match p {
        Problem::Mds | Problem::MvcDom => mds_scalar(g, x),
        Problem::Mvc => mvc_scalar(g, x),
        Problem::Cds => cds_scalar(g, x),
        Problem::Mis => mis_scalar(g, x),
    }
}

pub fn bi_objective(g: &Graph, x: &Solution, p: Problem) -> Result<ObjectiveVector> {
    match p {
        Problem::Mds | Problem::MvcDom => mds_bi(g, x),
        Problem::Mvc => mvc_bi(g, x),
        Problem::Cds => cds_bi(g, x),
        Problem::Mis => mis_bi(g, x),
    }
}

pub fn is_feasible(g: &Graph, x: &Solution, p: Problem) -> Result<bool> {
    Ok(match p.feasibility_class() {
        Problem::Mds => g.undominated_count(x)? == 0,
        Problem::Mvc => g.uncovered_edge_count(x)? == 0,
        Problem::Cds => g.undominated_count(x)? == 0 && g.selected_component_count(x)? == 1,
        Problem::Mis => g.conflict_count(x)? == 0,
        Problem::MvcDom => unreachable!("folded into Mvc"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    Exact,
    LowerBound,
    UpperBound,
}

impl ReferenceKind {
    pub fn name(self) -> &'static str {
        match self {
            ReferenceKind::Exact => "exact",
            ReferenceKind::LowerBound => "lower-bound",
            ReferenceKind::UpperBound => "upper-bound",
        }
    }
}

impl FromStr for ReferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ReferenceKind::Exact),
            "lower-bound" => Ok(ReferenceKind::LowerBound),
            "upper-bound" => Ok(ReferenceKind::UpperBound),
            other => Err(Error::usage(format!("unknown reference kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxRatio {
    pub achieved: usize,
    pub reference: usize,
    pub ratio: f64,
    pub reference_kind: ReferenceKind,
}

/// `achieved / reference` for minimisation, `reference / achieved` for
/// maximisation.
pub fn approx_ratio(
    achieved: usize,
    reference: usize,
    p: Problem,
    kind: ReferenceKind,
) -> Result<ApproxRatio> {
    if achieved == 0 || reference == 0 {
        return Err(Error::usage("approximation ratio needs non-zero sizes"));
    }
    let ratio = match p.sense() {
        Sense::Minimize => achieved as f64 / reference as f64,
        Sense::Maximize => reference as f64 / achieved as f64,
    };
    Ok(ApproxRatio {
        achieved,
        reference,
        ratio,
        reference_kind: kind,
    })
}
