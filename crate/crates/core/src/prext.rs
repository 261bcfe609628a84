//! Precoloring extension: decide whether a proper precoloring extends to a
//! proper `k`-coloring of the whole graph.

use std::collections::VecDeque;

use thiserror::Error;

use crate::budget::Meter;
use crate::coloring::{first_conflict, greedy_extend_array, Color, ColoringError, Precoloring, UNCOLORED};
use crate::enumerate::BudgetSpent;
use crate::graph::{induced_components, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrextInstance {
    pub graph: Graph,
    pub k: usize,
    pub precoloring: Precoloring,
}

impl PrextInstance {
    pub fn new(graph: Graph, precoloring: Precoloring) -> Result<Self, ColoringError> {
        for (v, _) in precoloring.iter() {
            if v >= graph.n() {
                return Err(ColoringError::InvalidVertex { vertex: v, n: graph.n() });
            }
        }
        Ok(PrextInstance {
            k: precoloring.k(),
            graph,
            precoloring,
        })
    }

    fn colors(&self) -> Vec<Color> {
        self.precoloring.to_color_array(self.graph.n())
    }

    /// Largest degree among uncolored vertices (0 if all are colored).
    pub fn max_uncolored_degree(&self) -> usize {
        self.graph
            .vertices()
            .filter(|&v| !self.precoloring.contains(v))
            .map(|v| self.graph.degree(v))
            .max()
            .unwrap_or(0)
    }

    fn check_uncolored_degree(&self, bound: usize) -> Result<(), ColoringError> {
        match self
            .graph
            .vertices()
            .find(|&v| !self.precoloring.contains(v) && self.graph.degree(v) > bound)
        {
            Some(v) => Err(ColoringError::DegreeTooHigh {
                vertex: v,
                degree: self.graph.degree(v),
                k: self.k,
            }),
            None => Ok(()),
        }
    }
}

/// The precoloring already has a monochromatic edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("precoloring is not proper")]
pub struct AlreadyInfeasible;

/// Output of [`pendant_reduction`]. Vertices of the reduced graph are the
/// uncolored vertices of the input (ascending) followed by the pendants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantReduction {
    pub instance: PrextInstance,
    /// Input vertex for each reduced vertex; `None` for pendants.
    pub origin: Vec<Option<Vertex>>,
}

/// Uses greedy extension; every uncolored vertex must have degree `< k`.
/// Returns `Ok(None)` when the precoloring is improper.
pub fn prext_greedy(inst: &PrextInstance) -> Result<Option<Vec<Color>>, ColoringError> {
    inst.check_uncolored_degree(inst.k.saturating_sub(1))?;
    let mut colors = inst.colors();
    if first_conflict(&inst.graph, &colors).is_some() {
        return Ok(None);
    }
    greedy_extend_array(&inst.graph, inst.k, &mut colors)?;
    Ok(Some(colors))
}

/// Deletes the colored vertices; every edge from a colored `x` to an uncolored
/// `y` becomes a fresh pendant adjacent only to `y`, carrying `x`'s color.
pub fn pendant_reduction(inst: &PrextInstance) -> Result<PendantReduction, AlreadyInfeasible> {
    let g = &inst.graph;
    let colors = inst.colors();
    if first_conflict(g, &colors).is_some() {
        return Err(AlreadyInfeasible);
    }
    let kept: Vec<Vertex> = g.vertices().filter(|&v| colors[v] == UNCOLORED).collect();
    let (core, _) = g.induced_subgraph(&kept);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut origin: Vec<Option<Vertex>> = kept.iter().map(|&v| Some(v)).collect();
    let mut edges: Vec<(Vertex, Vertex)> = core.edges().collect();
    let mut pendant_colors = Vec::new();
    for (x, cx) in inst.precoloring.iter() {
        for &y in g.neighbors(x) {
            if colors[y] == UNCOLORED {
                let p = origin.len();
                origin.push(None);
                edges.push((index[y], p));
                pendant_colors.push((p, cx));
            }
        }
    }
    let graph = Graph::from_edges(origin.len(), edges).expect("reduced edges are valid");
    let precoloring = Precoloring::from_pairs(inst.k, pendant_colors).expect("colors already validated");
    Ok(PendantReduction {
        instance: PrextInstance {
            graph,
            k: inst.k,
            precoloring,
        },
        origin,
    })
}

/// Exact extension when every uncolored vertex has degree `<= k`.
pub fn prext_bounded(inst: &PrextInstance) -> Result<Option<Vec<Color>>, ColoringError> {
    inst.check_uncolored_degree(inst.k)?;
    let reduced = match pendant_reduction(inst) {
        Ok(r) => r,
        Err(AlreadyInfeasible) => return Ok(None),
    };
    let h = &reduced.instance.graph;
    let k = inst.k;
    let mut colors = reduced.instance.colors();
    let uncolored: Vec<Vertex> = h.vertices().filter(|&v| colors[v] == UNCOLORED).collect();
    for comp in induced_components(h, &uncolored) {
        let solved = match slack_vertex(h, k, &colors, &comp) {
            Some(v) => {
                greedy_toward(h, k, &mut colors, &comp, v);
                true
            }
            None => {
                let mut state = Search::new(h, k, &colors, None);
                let ok = state.run(&comp).expect("no meter attached");
                if ok {
                    for &v in &comp {
                        colors[v] = state.colors[v];
                    }
                }
                ok
            }
        };
        if !solved {
            return Ok(None);
        }
    }
    let mut out = inst.colors();
    for (i, o) in reduced.origin.iter().enumerate() {
        if let Some(v) = *o {
            out[v] = colors[i];
        }
    }
    Ok(Some(out))
}

fn available(h: &Graph, k: usize, colors: &[Color], v: Vertex) -> Vec<bool> {
    let mut free = vec![true; k + 1];
    for &w in h.neighbors(v) {
        free[colors[w]] = false;
    }
    free[0] = false;
    free
}

/// Vertex whose list is longer than its degree inside the component.
fn slack_vertex(h: &Graph, k: usize, colors: &[Color], comp: &[Vertex]) -> Option<Vertex> {
    comp.iter().copied().find(|&v| {
        let list = available(h, k, colors, v).iter().filter(|&&f| f).count();
        let inner = h.neighbors(v).iter().filter(|&&w| colors[w] == UNCOLORED).count();
        list > inner
    })
}

/// Greedy list coloring in order of decreasing distance from `root`, so every
/// vertex but `root` still has an uncolored neighbor when it is colored.
fn greedy_toward(h: &Graph, k: usize, colors: &mut [Color], comp: &[Vertex], root: Vertex) {
    let mut dist = vec![usize::MAX; h.n()];
    let mut order = Vec::with_capacity(comp.len());
    let mut queue = VecDeque::from([root]);
    dist[root] = 0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in h.neighbors(u) {
            if colors[w] == UNCOLORED && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    for &v in order.iter().rev() {
        let free = available(h, k, colors, v);
        colors[v] = (1..=k).find(|&c| free[c]).expect("list exceeds colored neighbors");
    }
}

/// Exact extension by backtracking, no degree precondition.
pub fn prext_exact(inst: &PrextInstance) -> Option<Vec<Color>> {
    prext_exact_metered(inst, &Meter::unlimited()).expect("unlimited meter")
}

/// [`prext_exact`] charging one node per assignment to `meter`.
pub fn prext_exact_metered(inst: &PrextInstance, meter: &Meter) -> Result<Option<Vec<Color>>, BudgetSpent> {
    let g = &inst.graph;
    let colors = inst.colors();
    if first_conflict(g, &colors).is_some() {
        return Ok(None);
    }
    let uncolored: Vec<Vertex> = g.vertices().filter(|&v| colors[v] == UNCOLORED).collect();
    let mut state = Search::new(g, inst.k, &colors, Some(meter));
    if state.run(&uncolored)? {
        Ok(Some(state.colors))
    } else {
        Ok(None)
    }
}

/// List-coloring backtracking: most constrained vertex first (ties by index),
/// colors ascending, with forward checking on neighbors.
struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<Color>,
    // blocked[v * (k + 1) + c]: colored neighbors of v with color c
    blocked: Vec<u32>,
    free_count: Vec<usize>,
    meter: Option<&'a Meter>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, colors: &[Color], meter: Option<&'a Meter>) -> Self {
        let mut s = Search {
            g,
            k,
            colors: colors.to_vec(),
            blocked: vec![0; g.n() * (k + 1)],
            free_count: vec![k; g.n()],
            meter,
        };
        for v in g.vertices() {
            if colors[v] != UNCOLORED {
                s.block(v, colors[v]);
            }
        }
        s
    }

    fn block(&mut self, v: Vertex, c: Color) {
        for &w in self.g.neighbors(v) {
            let slot = &mut self.blocked[w * (self.k + 1) + c];
            *slot += 1;
            if *slot == 1 {
                self.free_count[w] -= 1;
            }
        }
    }

    fn unblock(&mut self, v: Vertex, c: Color) {
        for &w in self.g.neighbors(v) {
            let slot = &mut self.blocked[w * (self.k + 1) + c];
            *slot -= 1;
            if *slot == 0 {
                self.free_count[w] += 1;
            }
        }
    }

    fn run(&mut self, vars: &[Vertex]) -> Result<bool, BudgetSpent> {
        let mut open = vars.to_vec();
        self.solve(&mut open)
    }

    fn solve(&mut self, open: &mut Vec<Vertex>) -> Result<bool, BudgetSpent> {
        let Some(pos) = (0..open.len()).min_by_key(|&i| (self.free_count[open[i]], open[i])) else {
            return Ok(true);
        };
        let v = open.swap_remove(pos);
        for c in 1..=self.k {
            if self.blocked[v * (self.k + 1) + c] != 0 {
                continue;
            }
            if let Some(m) = self.meter {
                if !m.tick() {
                    return Err(BudgetSpent);
                }
            }
            self.colors[v] = c;
            self.block(v, c);
            let dead_end = self
                .g
                .neighbors(v)
                .iter()
                .any(|&w| self.colors[w] == UNCOLORED && self.free_count[w] == 0);
            if !dead_end && self.solve(open)? {
                return Ok(true);
            }
            self.unblock(v, c);
            self.colors[v] = UNCOLORED;
        }
        open.push(v);
        let last = open.len() - 1;
        open.swap(pos.min(last), last);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;

    fn inst(g: Graph, k: usize, pairs: &[(Vertex, Color)]) -> PrextInstance {
        PrextInstance::new(g, Precoloring::from_pairs(k, pairs.iter().copied()).unwrap()).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn check(i: &PrextInstance, colors: &[Color]) {
        let p = Precoloring::from_color_array(i.k, colors).unwrap();
        assert_eq!(p.len(), i.graph.n());
        assert!(is_proper(&i.graph, &p).unwrap());
        assert!(i.precoloring.is_extended_by(colors));
    }

    #[test]
    fn greedy_cases() {
        let i = inst(path(5), 3, &[(0, 1), (4, 1)]);
        check(&i, &prext_greedy(&i).unwrap().unwrap());
        let i = inst(Graph::complete(3), 3, &[(0, 1)]);
        assert_eq!(prext_greedy(&i).unwrap().unwrap(), vec![1, 2, 3]);
        let i = inst(path(2), 3, &[(0, 1), (1, 1)]);
        assert_eq!(prext_greedy(&i).unwrap(), None);
        let i = inst(Graph::complete(4), 3, &[]);
        assert!(prext_greedy(&i).is_err());
    }

    #[test]
    fn pendant_reduction_c4() {
        let i = inst(c4(), 2, &[(0, 1), (2, 2)]);
        let r = pendant_reduction(&i).unwrap();
        assert_eq!(r.instance.graph.n(), 6);
        assert_eq!(&r.origin[..2], &[Some(1), Some(3)]);
        assert_eq!(r.instance.precoloring.len(), 4);
        assert!((2..6).all(|p| r.instance.graph.degree(p) == 1));
        assert_eq!(prext_exact(&r.instance), None);
        assert_eq!(prext_bounded(&i).unwrap(), None);
    }

    #[test]
    fn pendant_reduction_k3_and_identity() {
        let i = inst(Graph::complete(3), 3, &[(0, 1)]);
        let r = pendant_reduction(&i).unwrap();
        assert_eq!(r.instance.graph.n(), 4);
        assert!(r.instance.graph.has_edge(0, 1));
        assert!(prext_exact(&r.instance).is_some());

        let i = inst(c4(), 2, &[]);
        let r = pendant_reduction(&i).unwrap();
        assert_eq!(r.instance.graph, c4());
        assert!(r.instance.precoloring.is_empty());

        let i = inst(path(2), 2, &[(0, 2), (1, 2)]);
        assert_eq!(pendant_reduction(&i), Err(AlreadyInfeasible));
    }

    #[test]
    fn bounded_cases() {
        let i = inst(c4(), 2, &[(0, 1)]);
        assert_eq!(prext_bounded(&i).unwrap().unwrap(), vec![1, 2, 1, 2]);
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(prext_bounded(&inst(c5, 2, &[])).unwrap(), None);
        assert!(prext_bounded(&inst(Graph::complete(4), 2, &[])).is_err());
    }

    #[test]
    fn exact_cases() {
        assert_eq!(prext_exact(&inst(Graph::complete(4), 3, &[])), None);
        let i = inst(path(5), 2, &[]);
        check(&i, &prext_exact(&i).unwrap());
    }

    #[test]
    fn metered_exact_can_run_out() {
        let g = Graph::complete(7);
        let i = inst(g, 6, &[]);
        let meter = Meter::new(crate::budget::Budget::nodes(5));
        assert_eq!(prext_exact_metered(&i, &meter), Err(BudgetSpent));
    }
}
