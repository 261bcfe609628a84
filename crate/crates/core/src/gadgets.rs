//! Instance generators: hardness gadgets built around a source graph, classic
//! graph families, and seeded random graphs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::Color;
use crate::graph::{m_degree, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GadgetError {
    #[error("source graph must be {expected}-regular, vertex {vertex} has degree {degree}")]
    NotRegular { expected: usize, vertex: Vertex, degree: usize },
    #[error("source graph needs at least {min} vertices, got {n}")]
    TooSmall { min: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invariant {name} expected {expected}, found {actual}")]
    InvariantViolated { name: String, expected: usize, actual: usize },
}

/// How an instance was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub construction: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub k: usize,
    pub provenance: Provenance,
    /// `(name, value)` pairs checked when the instance is built.
    pub expected_invariants: Vec<(String, usize)>,
}

#[derive(Serialize)]
struct ProvenanceJson<'a> {
    construction: &'a str,
    source: &'a str,
    k: usize,
    n: usize,
    invariants: serde_json::Map<String, serde_json::Value>,
}

impl GadgetInstance {
    fn new(
        graph: Graph,
        k: usize,
        construction: &str,
        source: String,
        expected: Vec<(&str, usize)>,
    ) -> Result<Self, GadgetError> {
        for &(name, value) in &expected {
            let actual = invariant(&graph, name);
            if actual != value {
                return Err(GadgetError::InvariantViolated {
                    name: name.to_string(),
                    expected: value,
                    actual,
                });
            }
        }
        Ok(GadgetInstance {
            graph,
            k,
            provenance: Provenance {
                construction: construction.to_string(),
                source,
            },
            expected_invariants: expected.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
        })
    }

    /// Sidecar JSON describing the construction and its checked invariants.
    pub fn provenance_json(&self) -> String {
        let invariants = self
            .expected_invariants
            .iter()
            .map(|(name, v)| (name.clone(), serde_json::Value::from(*v)))
            .collect();
        serde_json::to_string(&ProvenanceJson {
            construction: &self.provenance.construction,
            source: &self.provenance.source,
            k: self.k,
            n: self.graph.n(),
            invariants,
        })
        .expect("plain data serializes")
    }
}

fn invariant(g: &Graph, name: &str) -> usize {
    match name {
        "n" => g.n(),
        "delta" => g.max_degree(),
        "m_degree" => m_degree(g),
        other => unreachable!("unknown invariant {other}"),
    }
}

fn describe(g: &Graph) -> String {
    format!("graph with {} vertices and {} edges", g.n(), g.edge_count())
}

fn require_regular(g: &Graph, d: usize) -> Result<(), GadgetError> {
    match g.vertices().find(|&v| g.degree(v) != d) {
        Some(v) => Err(GadgetError::NotRegular {
            expected: d,
            vertex: v,
            degree: g.degree(v),
        }),
        None => Ok(()),
    }
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).expect("valid edges")
}

fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// Layout of the graph built by [`gen_havet`] from a cubic graph on `n`
/// vertices with `m` edges: clique vertices `0..n`, edge vertices
/// `n..n+m` (in the order of `Graph::edges`), then `K_{n,n+3}` and two copies
/// of `K_{2,n+3}`, each small side first.
pub fn gen_havet(g: &Graph) -> Result<GadgetInstance, GadgetError> {
    require_regular(g, 3)?;
    let n = g.n();
    if n < 4 {
        return Err(GadgetError::TooSmall { min: 4, n });
    }
    let m = g.edge_count();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    for (j, (a, b)) in g.edges().enumerate() {
        edges.push((a, n + j));
        edges.push((b, n + j));
    }
    let core = Graph::from_edges(n + m, edges).expect("valid edges");
    let s = complete_bipartite(n, n + 3)
        .disjoint_union(&complete_bipartite(2, n + 3))
        .disjoint_union(&complete_bipartite(2, n + 3));
    let h = core.disjoint_union(&s);
    GadgetInstance::new(
        h,
        n + 3,
        "havet",
        describe(g),
        vec![("n", n + m + 4 * n + 13), ("delta", n + 3), ("m_degree", n + 4)],
    )
}

/// b-coloring of the [`gen_havet`] graph with `n + 3` colors built from a
/// proper 3-edge-coloring of the source graph (`edge_colors[j]` in `1..=3`
/// for the `j`-th edge of `Graph::edges`).
pub fn havet_coloring(g: &Graph, edge_colors: &[Color]) -> Result<Vec<Color>, GadgetError> {
    require_regular(g, 3)?;
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    if edge_colors.len() != edges.len() || edge_colors.iter().any(|c| !(1..=3).contains(c)) {
        return Err(GadgetError::InvalidParams("need one color in 1..=3 per edge".into()));
    }
    for v in g.vertices() {
        let mut seen = [false; 4];
        for (j, &(a, b)) in edges.iter().enumerate() {
            if a == v || b == v {
                if seen[edge_colors[j]] {
                    return Err(GadgetError::InvalidParams(format!("edge coloring repeats a color at vertex {v}")));
                }
                seen[edge_colors[j]] = true;
            }
        }
    }
    let k = n + 3;
    let mut colors: Vec<Color> = (0..n).map(|i| i + 4).collect();
    colors.extend_from_slice(edge_colors);
    for (small, c) in [(n, 1), (2, 2), (2, 3)] {
        colors.extend(std::iter::repeat_n(c, small));
        let others: Vec<Color> = (1..=k).filter(|&x| x != c).collect();
        colors.extend_from_slice(&others);
        colors.push(others[0]);
    }
    Ok(colors)
}

/// `g ⊎ K_{1,2} ⊎ K_{1,2} ⊎ K_{1,c+3}` with `k = 3`, for a 4-regular `g`.
pub fn gen_star_pad_delta(g: &Graph, c: usize) -> Result<GadgetInstance, GadgetError> {
    require_regular(g, 4)?;
    if c == 0 {
        return Err(GadgetError::InvalidParams("c must be at least 1".into()));
    }
    let h = g.disjoint_union(&star(2)).disjoint_union(&star(2)).disjoint_union(&star(c + 3));
    let n = h.n();
    GadgetInstance::new(h, 3, "star-pad-delta", describe(g), vec![("n", n), ("delta", c + 3)])
}

/// `g` plus `c + 4` disjoint copies of `K_{1,c+3}` with `k = 3`, for a
/// 4-regular `g`.
pub fn gen_star_pad_m(g: &Graph, c: usize) -> Result<GadgetInstance, GadgetError> {
    require_regular(g, 4)?;
    if c == 0 {
        return Err(GadgetError::InvalidParams("c must be at least 1".into()));
    }
    let mut h = g.clone();
    for _ in 0..c + 4 {
        h = h.disjoint_union(&star(c + 3));
    }
    let n = h.n();
    GadgetInstance::new(h, 3, "star-pad-m", describe(g), vec![("n", n), ("m_degree", c + 4)])
}

/// Named graph families; textual form `name:params`, e.g. `path:5`,
/// `complete-bipartite:3,3`, `circulant:9:1,2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classic {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Circulant(usize, Vec<usize>),
    Empty(usize),
}

impl Classic {
    pub fn build(&self) -> Result<Graph, GadgetError> {
        let bad = |msg: &str| Err(GadgetError::InvalidParams(msg.to_string()));
        let g = match *self {
            Classic::Path(n) if n >= 1 => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
            Classic::Cycle(n) if n >= 3 => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
            Classic::Complete(n) if n >= 1 => Ok(Graph::complete(n)),
            Classic::CompleteBipartite(a, b) if a + b >= 1 => Ok(complete_bipartite(a, b)),
            Classic::Star(l) => Ok(star(l)),
            Classic::Empty(n) if n >= 1 => Ok(Graph::empty(n)),
            Classic::Circulant(n, ref offsets) if n >= 1 => {
                if offsets.iter().any(|&o| o == 0 || 2 * o > n) {
                    return bad("circulant offsets must lie in 1..=n/2");
                }
                Graph::from_edges(
                    n,
                    (0..n).flat_map(|i| offsets.iter().map(move |&o| (i, (i + o) % n))),
                )
            }
            Classic::Cycle(_) => return bad("a cycle needs at least 3 vertices"),
            _ => return bad("a graph needs at least one vertex"),
        };
        Ok(g.expect("generated edges are valid"))
    }
}

impl FromStr for Classic {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GadgetError::InvalidParams(format!("cannot parse graph family {s:?}"));
        let mut parts = s.split(':');
        let name = parts.next().ok_or_else(bad)?;
        let args: Vec<&str> = parts.collect();
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let list = |t: &str| t.split(',').map(num).collect::<Result<Vec<_>, _>>();
        let single = || match args.as_slice() {
            [a] => num(a),
            _ => Err(bad()),
        };
        match name {
            "path" => Ok(Classic::Path(single()?)),
            "cycle" => Ok(Classic::Cycle(single()?)),
            "complete" => Ok(Classic::Complete(single()?)),
            "star" => Ok(Classic::Star(single()?)),
            "empty" => Ok(Classic::Empty(single()?)),
            "complete-bipartite" => match args.as_slice() {
                [ab] => match list(ab)?.as_slice() {
                    &[a, b] => Ok(Classic::CompleteBipartite(a, b)),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            },
            "circulant" => match args.as_slice() {
                [n, offsets] => Ok(Classic::Circulant(num(n)?, list(offsets)?)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Classic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classic::Path(n) => write!(f, "path:{n}"),
            Classic::Cycle(n) => write!(f, "cycle:{n}"),
            Classic::Complete(n) => write!(f, "complete:{n}"),
            Classic::CompleteBipartite(a, b) => write!(f, "complete-bipartite:{a},{b}"),
            Classic::Star(l) => write!(f, "star:{l}"),
            Classic::Empty(n) => write!(f, "empty:{n}"),
            Classic::Circulant(n, offsets) => {
                let list: Vec<String> = offsets.iter().map(|o| o.to_string()).collect();
                write!(f, "circulant:{n}:{}", list.join(","))
            }
        }
    }
}

/// Builds a classic family from its textual form.
pub fn gen_classic(spec: &str) -> Result<Graph, GadgetError> {
    spec.parse::<Classic>()?.build()
}

/// `G(n, p)`: each of the `n(n-1)/2` pairs, in lexicographic order, becomes
/// an edge with probability `p`, driven by a ChaCha8 stream seeded with
/// `seed`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Graph, GadgetError> {
    if n == 0 {
        return Err(GadgetError::InvalidParams("a graph needs at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GadgetError::InvalidParams(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("valid edges"))
}
