//! Deletion of vertices whose closed neighborhood has only low degrees.

use crate::coloring::{Color, UNCOLORED};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    /// Input vertex behind each vertex of `graph`, ascending.
    pub kept: Vec<Vertex>,
    /// Deleted input vertices in deletion order.
    pub removed: Vec<Vertex>,
}

/// Repeatedly deletes the smallest vertex `v` such that every vertex of
/// `N[v]` has degree at most `k - 2` in the current graph. Such a vertex can
/// never be, or be needed by, a b-vertex, so the answer for `k` colors is
/// unchanged. For `k < 2` nothing is deleted.
pub fn apply_reduction_rule(g: &Graph, k: usize) -> Reduction {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = Vec::new();
    if k >= 2 {
        let low = k - 2;
        'scan: loop {
            for v in g.vertices() {
                let removable = alive[v]
                    && degree[v] <= low
                    && g.neighbors(v).iter().all(|&w| !alive[w] || degree[w] <= low);
                if removable {
                    alive[v] = false;
                    for &w in g.neighbors(v) {
                        if alive[w] {
                            degree[w] -= 1;
                        }
                    }
                    removed.push(v);
                    continue 'scan;
                }
            }
            break;
        }
    }
    let kept: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    let (graph, kept) = g.induced_subgraph(&kept);
    Reduction { graph, kept, removed }
}

impl Reduction {
    /// Turns a coloring of the reduced graph into one of the input graph:
    /// deleted vertices are restored in reverse order, each taking the
    /// smallest color unused on its already colored neighbors. Each had at
    /// most `k - 2` neighbors when deleted, so a color is always free, and
    /// b-vertices of the reduced coloring stay b-vertices.
    pub fn lift(&self, g: &Graph, k: usize, reduced_colors: &[Color]) -> Vec<Color> {
        let mut colors = vec![UNCOLORED; g.n()];
        for (i, &v) in self.kept.iter().enumerate() {
            colors[v] = reduced_colors[i];
        }
        let mut used = vec![false; k + 1];
        for &v in self.removed.iter().rev() {
            used.iter_mut().for_each(|u| *u = false);
            for &w in g.neighbors(v) {
                used[colors[w]] = true;
            }
            colors[v] = (1..=k).find(|&c| !used[c]).expect("deleted vertex has a free color");
        }
        colors
    }
}
