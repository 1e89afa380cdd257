//! Reference solutions: exact solvers for small graphs, the greedy
//! constructions used in the approximation arguments, cheap size bounds
//! and the 3-local-optimum test for independent sets.

mod bounds;
mod exact;
mod greedy;
mod local;

use serde::{Deserialize, Serialize};

use crate::fitness::Problem;
use crate::graph::Solution;

pub use bounds::{greedy_maximal_matching, size_bounds, verify_greedy_mds_recurrence, SizeBounds};
pub use exact::{exact_limit_from_env, exact_solve, DEFAULT_EXACT_LIMIT, MAX_EXACT_LIMIT};
pub use greedy::{greedy, greedy_cds, greedy_mds, greedy_mis};
pub use local::{is_3_local_optimum, LocalOptimality, SwapMove};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    Exact,
    Greedy,
    Bound,
}

/// One greedy choice and the residual quantity after making it: the
/// undominated count for MDS, `u + w` for CDS, and the remaining vertex
/// count for MIS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub vertex: usize,
    pub residual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub problem: Problem,
    pub optimum_size: usize,
    pub witness: Solution,
    pub method: OracleMethod,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequence_trace: Vec<TraceStep>,
}
