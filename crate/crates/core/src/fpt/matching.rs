//! Systems of distinct representatives over colors.

use crate::coloring::{Color, Precoloring};
use crate::graph::{Graph, Vertex};
use crate::outcome::SolveError;

/// Picks pairwise distinct colors, `out[i]` from `allowed[i]`. Items are
/// placed in order, each first on its smallest free allowed color, and only
/// otherwise through an augmenting path.
pub(crate) fn distinct_representatives(allowed: &[Vec<Color>], k: usize) -> Option<Vec<Color>> {
    let mut owner: Vec<Option<usize>> = vec![None; k + 1];
    let mut assigned = vec![0; allowed.len()];
    for item in 0..allowed.len() {
        if let Some(&c) = allowed[item].iter().find(|&&c| owner[c].is_none()) {
            owner[c] = Some(item);
            assigned[item] = c;
            continue;
        }
        let mut visited = vec![false; k + 1];
        if !augment(item, allowed, &mut owner, &mut assigned, &mut visited) {
            return None;
        }
    }
    Some(assigned)
}

fn augment(
    item: usize,
    allowed: &[Vec<Color>],
    owner: &mut [Option<usize>],
    assigned: &mut [Color],
    visited: &mut [bool],
) -> bool {
    for &c in &allowed[item] {
        if visited[c] {
            continue;
        }
        visited[c] = true;
        let free = match owner[c] {
            None => true,
            Some(other) => augment(other, allowed, owner, assigned, visited),
        };
        if free {
            owner[c] = Some(item);
            assigned[item] = c;
            return true;
        }
    }
    false
}

/// Colors `d_set` with pairwise distinct colors so that no vertex shares the
/// color of an adjacent b-vertex; `bprime[i]` carries color `i + 1`.
pub fn color_d_injective(g: &Graph, d_set: &[Vertex], bprime: &[Vertex], k: usize) -> Result<Precoloring, SolveError> {
    let allowed: Vec<Vec<Color>> = d_set
        .iter()
        .map(|&d| {
            let forbidden: Vec<Color> = bprime
                .iter()
                .enumerate()
                .filter(|&(_, &x)| g.has_edge(d, x))
                .map(|(i, _)| i + 1)
                .collect();
            (1..=k).filter(|c| !forbidden.contains(c)).collect()
        })
        .collect();
    let colors = distinct_representatives(&allowed, k).ok_or_else(|| {
        SolveError::Internal(format!("no injective coloring of D = {d_set:?} avoiding b-vertex colors"))
    })?;
    Ok(Precoloring::from_pairs(k, d_set.iter().copied().zip(colors)).expect("colors in range"))
}
