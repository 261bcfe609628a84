//! Recoloring a component of `G[D ∪ B']` around its designated vertex.

use std::collections::BTreeSet;

use crate::coloring::{swap_color, Color, Precoloring, RecolorOutcome, UNCOLORED};
use crate::graph::{induced_components, Graph, Vertex};
use crate::outcome::SolveError;

/// Starting from a proper coloring of the connected vertex set `component`
/// (which contains `x`), produces either a coloring in which some `z != x`
/// is a b-vertex of color `i` using only component neighbors, or one in which
/// `x` has color `i` and its closed component neighborhood is rainbow.
///
/// While two neighbors of `x` share a color, a color `j` missing around `x`
/// is removed from the component: every `z` colored `j` either already sees
/// all other colors (then `i` and `j` are exchanged and `z` is returned) or is
/// moved to a color it does not see. One of the two equally colored
/// neighbors then takes `j` and the pair is joined by a virtual edge, so the
/// number of colors around `x` grows by one per round.
pub fn recolor_component(
    g: &Graph,
    component: &[Vertex],
    x: Vertex,
    i: Color,
    start: &Precoloring,
    k: usize,
) -> Result<RecolorOutcome, SolveError> {
    let pre = |msg: String| Err(SolveError::Precondition(msg));
    if i == 0 || i > k {
        return pre(format!("color {i} outside 1..={k}"));
    }
    if !component.contains(&x) {
        return pre(format!("vertex {x} is not in the component"));
    }
    if g.degree(x) + 1 != k {
        return pre(format!("vertex {x} has degree {} but k - 1 = {}", g.degree(x), k - 1));
    }
    if induced_components(g, component).len() != 1 {
        return pre("vertex set is not connected".into());
    }
    let mut inside = vec![false; g.n()];
    let mut colors = vec![UNCOLORED; g.n()];
    for &v in component {
        inside[v] = true;
        match start.get(v) {
            Some(c) if (1..=k).contains(&c) => colors[v] = c,
            _ => return pre(format!("vertex {v} has no color in 1..={k}")),
        }
    }
    let members: Vec<Vertex> = {
        let mut m = component.to_vec();
        m.sort_unstable();
        m.dedup();
        m
    };
    let inner = |v: Vertex| g.neighbors(v).iter().copied().filter(|&w| inside[w]).collect::<Vec<_>>();
    if members.iter().any(|&v| inner(v).iter().any(|&w| colors[w] == colors[v])) {
        return pre("start coloring is not proper on the component".into());
    }

    let switch = |colors: &mut [Color], a: Color, b: Color| {
        for &v in &members {
            colors[v] = swap_color(colors[v], a, b);
        }
    };
    if colors[x] != i {
        let c = colors[x];
        switch(&mut colors, i, c);
    }
    let around: Vec<Vertex> = inner(x);
    let mut virtual_edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();

    let outcome = loop {
        let mut present = vec![false; k + 1];
        let mut duplicated = false;
        for &y in &around {
            duplicated |= present[colors[y]];
            present[colors[y]] = true;
        }
        if !duplicated {
            break RecolorOutcome::InjectiveNeighborhood {
                coloring: to_precoloring(k, &members, &colors),
            };
        }
        let j = (1..=k)
            .find(|&c| c != i && !present[c])
            .expect("a repeated color leaves some color unused around x");
        let mut found = None;
        for &z in &members {
            if colors[z] != j {
                continue;
            }
            let mut seen = vec![false; k + 1];
            for w in inner(z) {
                seen[colors[w]] = true;
            }
            if (1..=k).all(|c| c == j || seen[c]) {
                found = Some(z);
                break;
            }
            colors[z] = (1..=k)
                .find(|&c| c != j && !seen[c])
                .expect("z misses some color other than its own");
        }
        if let Some(z) = found {
            switch(&mut colors, i, j);
            break RecolorOutcome::InternalBVertex {
                z,
                coloring: to_precoloring(k, &members, &colors),
            };
        }
        let (y1, y2) = around
            .iter()
            .enumerate()
            .find_map(|(a, &y1)| around[a + 1..].iter().find(|&&y2| colors[y2] == colors[y1]).map(|&y2| (y1, y2)))
            .expect("a repeated color exists");
        debug_assert!(!g.has_edge(y1, y2) && !virtual_edges.contains(&(y1.min(y2), y1.max(y2))));
        colors[y1] = j;
        virtual_edges.insert((y1.min(y2), y1.max(y2)));
    };
    check_outcome(g, &members, x, i, k, &outcome)?;
    Ok(outcome)
}

fn to_precoloring(k: usize, members: &[Vertex], colors: &[Color]) -> Precoloring {
    Precoloring::from_pairs(k, members.iter().map(|&v| (v, colors[v]))).expect("colors in range")
}

fn check_outcome(
    g: &Graph,
    members: &[Vertex],
    x: Vertex,
    i: Color,
    k: usize,
    outcome: &RecolorOutcome,
) -> Result<(), SolveError> {
    let p = outcome.coloring();
    let fail = |msg: &str| Err(SolveError::Internal(format!("recoloring around {x}: {msg}")));
    let inside = |v: Vertex| p.contains(v);
    for &v in members {
        if g.neighbors(v).iter().any(|&w| inside(w) && p.get(w) == p.get(v)) {
            return fail("coloring is not proper");
        }
    }
    match outcome {
        RecolorOutcome::InternalBVertex { z, .. } => {
            let mut seen = vec![false; k + 1];
            for &w in g.neighbors(*z) {
                if let Some(c) = p.get(w) {
                    seen[c] = true;
                }
            }
            if *z == x || p.get(*z) != Some(i) || !(1..=k).all(|c| c == i || seen[c]) {
                return fail("returned vertex is not a b-vertex of the color");
            }
        }
        RecolorOutcome::InjectiveNeighborhood { .. } => {
            if p.get(x) != Some(i) {
                return fail("designated vertex lost its color");
            }
            let mut seen = vec![false; k + 1];
            seen[i] = true;
            for &w in g.neighbors(x) {
                if let Some(c) = p.get(w) {
                    if seen[c] {
                        return fail("neighborhood is not rainbow");
                    }
                    seen[c] = true;
                }
            }
        }
    }
    Ok(())
}
