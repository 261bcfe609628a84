//! Greedy maximal sets of pairwise distant vertices.

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatterSet {
    pub members: Vec<Vertex>,
    pub min_pairwise_distance: usize,
}

/// Scans `candidates` in ascending order, keeping a vertex when it is at
/// distance at least `min_dist` from everything kept so far. The result is
/// maximal among subsets of `candidates`.
pub fn scattered_set(g: &Graph, candidates: &[Vertex], min_dist: usize) -> ScatterSet {
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut blocked = vec![false; g.n()];
    let mut members = Vec::new();
    for v in sorted {
        if blocked[v] {
            continue;
        }
        members.push(v);
        for w in g.ball(v, min_dist) {
            blocked[w] = true;
        }
    }
    ScatterSet {
        members,
        min_pairwise_distance: min_dist,
    }
}
