use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Solution};

/// Remove `remove` from the set and add `add`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapMove {
    pub remove: Vec<usize>,
    pub add: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalOptimality {
    pub is_local_optimum: bool,
    pub improving_move: Option<SwapMove>,
}

/// Whether no swap touching at most three vertices raises the MIS fitness
/// of the independent set `x`.
///
/// With `x` independent the fitness is `|x|`, and a swap can only beat it by
/// adding more vertices than it removes while staying conflict free. That
/// leaves four shapes: add one, two or three free vertices, or trade one
/// member for two.
pub fn is_3_local_optimum(g: &Graph, x: &Solution) -> Result<LocalOptimality> {
    g.check_solution(x)?;
    if g.conflict_count(x)? != 0 {
        return Err(Error::usage("solution is not an independent set"));
    }
    let n = g.n();
    // For each outsider, its neighbours inside x (capped at two).
    let mut inside: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| !x.get(v)) {
        for &u in g.neighbors(v) {
            if x.get(u) && inside[v].len() < 2 {
                inside[v].push(u);
            }
        }
    }
    let free: Vec<usize> = (0..n).filter(|&v| !x.get(v) && inside[v].is_empty()).collect();
    let found = |remove: Vec<usize>, add: Vec<usize>| LocalOptimality {
        is_local_optimum: false,
        improving_move: Some(SwapMove { remove, add }),
    };

    if let Some(&v) = free.first() {
        return Ok(found(vec![], vec![v]));
    }
    // Every outsider now has a neighbour in x, so moves without removals
    // are impossible; only the one-for-two trade remains.
    for u in x.iter_ones() {
        let tight: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| inside[v].len() == 1)
            .collect();
        for (i, &a) in tight.iter().enumerate() {
            if let Some(&b) = tight[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Ok(found(vec![u], vec![a, b]));
            }
        }
    }
    Ok(LocalOptimality {
        is_local_optimum: true,
        improving_move: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p3 = Graph::path(3);
        let ends = Solution::from_vertices(3, [0, 2]);
        assert!(is_3_local_optimum(&p3, &ends).unwrap().is_local_optimum);
        let centre = Solution::from_vertices(3, [1]);
        let r = is_3_local_optimum(&p3, &centre).unwrap();
        assert!(!r.is_local_optimum);
        assert_eq!(
            r.improving_move,
            Some(SwapMove {
                remove: vec![1],
                add: vec![0, 2]
            })
        );
        let single = Graph::empty(1);
        assert!(is_3_local_optimum(&single, &Solution::ones(1)).unwrap().is_local_optimum);
        assert!(is_3_local_optimum(&p3, &Solution::ones(3)).is_err());
    }
}
