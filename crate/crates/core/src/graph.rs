//! Simple undirected graphs on vertices `0..n` and the degree invariants the
//! solvers are parameterized by.

use std::collections::VecDeque;

use thiserror::Error;

/// Vertex index, `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("graph has no vertices")]
    Empty,
}

/// Finite simple undirected graph. Neighbor lists are kept sorted so that every
/// traversal, and everything downstream of it, is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse into one; self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: twice / 2,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Maximum degree, 0 for graphs without vertices.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Subgraph induced by `keep` (any order, duplicates ignored). Vertex `i`
    /// of the result corresponds to the `i`-th smallest kept vertex, which is
    /// returned alongside.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut original: Vec<Vertex> = keep.to_vec();
        original.sort_unstable();
        original.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let mut edge_count = 0;
        let adjacency: Vec<Vec<Vertex>> = original
            .iter()
            .map(|&v| {
                let list: Vec<Vertex> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                edge_count += list.len();
                list
            })
            .collect();
        (
            Graph {
                adjacency,
                edge_count: edge_count / 2,
            },
            original,
        )
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&v| v + shift).collect()),
        );
        Graph {
            adjacency,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices within distance `< radius` of `source` (including `source`).
    pub(crate) fn ball(&self, source: Vertex, radius: usize) -> Vec<Vertex> {
        let mut seen = vec![false; self.n()];
        seen[source] = true;
        let mut out = vec![source];
        let mut frontier = vec![source];
        for _ in 1..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend_from_slice(&next);
            frontier = next;
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Proper 2-coloring with colors 1 and 2 (each component's smallest vertex
    /// gets 1), or `None` if the graph has an odd cycle.
    pub fn two_coloring(&self) -> Option<Vec<usize>> {
        let mut color = vec![0usize; self.n()];
        for s in self.vertices() {
            if color[s] != 0 {
                continue;
            }
            color[s] = 1;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if color[w] == 0 {
                        color[w] = 3 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }
}

/// Maximum degree, m-degree and degree histogram of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub delta: usize,
    /// Largest `i` such that at least `i` vertices have degree `>= i - 1`.
    pub m_degree: usize,
    /// `degree_histogram[d]` is the number of vertices of degree `d`.
    pub degree_histogram: Vec<usize>,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let delta = g.max_degree();
    let mut degree_histogram = vec![0; delta + 1];
    for v in g.vertices() {
        degree_histogram[g.degree(v)] += 1;
    }
    Ok(DegreeStats {
        delta,
        m_degree: m_degree(g),
        degree_histogram,
    })
}

/// The m-degree; 0 only for the graph without vertices.
pub fn m_degree(g: &Graph) -> usize {
    let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    // degrees[i-1] >= i-1 is monotone in i once it fails
    degrees
        .iter()
        .enumerate()
        .take_while(|&(i, &d)| d >= i)
        .count()
}

/// Number of vertices of degree at least `k`.
pub fn ell_k(g: &Graph, k: usize) -> usize {
    g.vertices().filter(|&v| g.degree(v) >= k).count()
}

/// Shortest-path distance, `None` if `u` and `v` lie in different components.
pub fn bfs_distance(g: &Graph, u: Vertex, v: Vertex) -> Result<Option<usize>, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(Some(0));
    }
    Ok(g.distances_from(u)[v])
}

/// Connected components of `G[subset]`, each sorted, listed by minimum vertex.
pub fn induced_components(g: &Graph, subset: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut inside = vec![false; g.n()];
    for &v in subset {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut components = Vec::new();
    for s in g.vertices() {
        if !inside[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut component = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    component.push(w);
                    stack.push(w);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Degree-threshold 3-partition for a target number of colors `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DtrPartition {
    /// degree >= k
    pub d_set: Vec<Vertex>,
    /// degree == k - 1
    pub t_set: Vec<Vertex>,
    /// everything else
    pub r_set: Vec<Vertex>,
}

pub fn partition_dtr(g: &Graph, k: usize) -> DtrPartition {
    let mut p = DtrPartition::default();
    for v in g.vertices() {
        let d = g.degree(v);
        if d >= k {
            p.d_set.push(v);
        } else if d + 1 == k {
            p.t_set.push(v);
        } else {
            p.r_set.push(v);
        }
    }
    p
}
