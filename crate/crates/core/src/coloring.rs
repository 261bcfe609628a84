//! Precolorings, b-vertices, certificates.
//!
//! Colors are `1..=k`. Internally the solvers work on dense color arrays of
//! length `n` where `0` marks an uncolored vertex; the public [`Precoloring`]
//! type is a sparse, ordered map.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = usize;

/// Marker for "no color" in dense color arrays.
pub const UNCOLORED: Color = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("color {color} on vertex {vertex} is outside 1..={k}")]
    ColorOutOfRange { vertex: Vertex, color: Color, k: usize },
    #[error("vertex {0} assigned two different colors")]
    ConflictingAssignment(Vertex),
    #[error("domains overlap at vertex {0}")]
    OverlappingDomains(Vertex),
    #[error("precolorings use different numbers of colors ({0} vs {1})")]
    KMismatch(usize, usize),
    #[error("uncolored vertex {vertex} has degree {degree} >= k = {k}")]
    DegreeTooHigh { vertex: Vertex, degree: usize, k: usize },
    #[error("edge {{{0}, {1}}} is monochromatic")]
    Improper(Vertex, Vertex),
}

/// Partial assignment of colors in `1..=k` to a vertex subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precoloring {
    k: usize,
    assignment: BTreeMap<Vertex, Color>,
}

impl Precoloring {
    pub fn new(k: usize) -> Self {
        Precoloring {
            k,
            assignment: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I>(k: usize, pairs: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = (Vertex, Color)>,
    {
        let mut p = Precoloring::new(k);
        for (v, c) in pairs {
            if let Some(&old) = p.assignment.get(&v) {
                if old != c {
                    return Err(ColoringError::ConflictingAssignment(v));
                }
            }
            p.assign(v, c)?;
        }
        Ok(p)
    }

    /// From a dense array where `0` means uncolored.
    pub fn from_color_array(k: usize, colors: &[Color]) -> Result<Self, ColoringError> {
        Precoloring::from_pairs(
            k,
            colors
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != UNCOLORED)
                .map(|(v, &c)| (v, c)),
        )
    }

    pub fn assign(&mut self, v: Vertex, color: Color) -> Result<(), ColoringError> {
        if color == 0 || color > self.k {
            return Err(ColoringError::ColorOutOfRange {
                vertex: v,
                color,
                k: self.k,
            });
        }
        self.assignment.insert(v, color);
        Ok(())
    }

    pub fn remove(&mut self, v: Vertex) -> Option<Color> {
        self.assignment.remove(&v)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.assignment.get(&v).copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.assignment.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Colored vertices in ascending order.
    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.assignment.keys().copied()
    }

    /// `(vertex, color)` pairs in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    pub fn restrict<F: Fn(Vertex) -> bool>(&self, keep: F) -> Precoloring {
        Precoloring {
            k: self.k,
            assignment: self
                .assignment
                .iter()
                .filter(|(&v, _)| keep(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        }
    }

    /// Dense array of length `n`, `0` for uncolored vertices.
    pub fn to_color_array(&self, n: usize) -> Vec<Color> {
        let mut colors = vec![UNCOLORED; n];
        for (v, c) in self.iter() {
            colors[v] = c;
        }
        colors
    }

    /// True iff the total coloring `colors` agrees with this precoloring.
    pub fn is_extended_by(&self, colors: &[Color]) -> bool {
        self.iter().all(|(v, c)| colors.get(v) == Some(&c))
    }

    fn check_vertices(&self, g: &Graph) -> Result<(), ColoringError> {
        match self.assignment.keys().next_back() {
            Some(&v) if v >= g.n() => Err(ColoringError::InvalidVertex { vertex: v, n: g.n() }),
            _ => Ok(()),
        }
    }
}

/// True iff no edge of `G[X]` is monochromatic.
pub fn is_proper(g: &Graph, p: &Precoloring) -> Result<bool, ColoringError> {
    p.check_vertices(g)?;
    Ok(p.iter()
        .all(|(v, c)| g.neighbors(v).iter().all(|&w| w < v || p.get(w) != Some(c))))
}

/// Smallest colored vertex of color `i` whose colored neighbors carry every
/// other color in `1..=k`.
pub fn b_vertex_for(g: &Graph, p: &Precoloring, i: Color) -> Option<Vertex> {
    if p.check_vertices(g).is_err() {
        return None;
    }
    let colors = p.to_color_array(g.n());
    b_vertex_in(g, &colors, p.k(), i, p.domain())
}

pub fn is_b_precoloring(g: &Graph, p: &Precoloring) -> bool {
    if !is_proper(g, p).unwrap_or(false) {
        return false;
    }
    let colors = p.to_color_array(g.n());
    (1..=p.k()).all(|i| b_vertex_in(g, &colors, p.k(), i, p.domain()).is_some())
}

/// A b-precoloring from whose domain no single vertex can be dropped. Since
/// being a b-precoloring is preserved when the domain grows (with the same
/// colors), this coincides with minimality over all proper subsets.
pub fn is_minimal_b_precoloring(g: &Graph, p: &Precoloring) -> bool {
    if !is_proper(g, p).unwrap_or(false) {
        return false;
    }
    let colors = p.to_color_array(g.n());
    let domain: Vec<Vertex> = p.domain().collect();
    is_minimal_b_array(g, &colors, p.k(), &domain)
}

/// Union of two precolorings with disjoint domains.
pub fn union_precolorings(a: &Precoloring, b: &Precoloring) -> Result<Precoloring, ColoringError> {
    if a.k != b.k {
        return Err(ColoringError::KMismatch(a.k, b.k));
    }
    let mut out = a.clone();
    for (v, c) in b.iter() {
        if out.assignment.insert(v, c).is_some() {
            return Err(ColoringError::OverlappingDomains(v));
        }
    }
    Ok(out)
}

/// Exchanges colors `i` and `j` on the domain.
pub fn switch_colors(p: &Precoloring, i: Color, j: Color) -> Precoloring {
    Precoloring {
        k: p.k,
        assignment: p.iter().map(|(v, c)| (v, swap_color(c, i, j))).collect(),
    }
}

#[inline]
pub(crate) fn swap_color(c: Color, i: Color, j: Color) -> Color {
    if c == i {
        j
    } else if c == j {
        i
    } else {
        c
    }
}

/// Extends a proper precoloring to a total proper coloring: uncolored vertices
/// in ascending order each take the smallest color missing from their
/// neighborhood. Every uncolored vertex must have degree `< k`.
pub fn greedy_extend(g: &Graph, p: &Precoloring) -> Result<Vec<Color>, ColoringError> {
    p.check_vertices(g)?;
    let mut colors = p.to_color_array(g.n());
    if let Some((u, v)) = first_conflict(g, &colors) {
        return Err(ColoringError::Improper(u, v));
    }
    greedy_extend_array(g, p.k(), &mut colors)?;
    Ok(colors)
}

pub(crate) fn greedy_extend_array(g: &Graph, k: usize, colors: &mut [Color]) -> Result<(), ColoringError> {
    if let Some(v) = g
        .vertices()
        .find(|&v| colors[v] == UNCOLORED && g.degree(v) >= k)
    {
        return Err(ColoringError::DegreeTooHigh {
            vertex: v,
            degree: g.degree(v),
            k,
        });
    }
    let mut used = vec![false; k + 1];
    for v in g.vertices() {
        if colors[v] != UNCOLORED {
            continue;
        }
        used.iter_mut().for_each(|u| *u = false);
        for &w in g.neighbors(v) {
            used[colors[w]] = true;
        }
        colors[v] = (1..=k).find(|&c| !used[c]).expect("degree < k leaves a free color");
    }
    Ok(())
}

/// First monochromatic edge among colored vertices, if any.
pub(crate) fn first_conflict(g: &Graph, colors: &[Color]) -> Option<(Vertex, Vertex)> {
    g.edges()
        .find(|&(u, v)| colors[u] != UNCOLORED && colors[u] == colors[v])
}

/// Smallest `v` in `candidates` (ascending) colored `i` whose colored
/// neighbors cover every other color.
pub(crate) fn b_vertex_in<I>(g: &Graph, colors: &[Color], k: usize, i: Color, candidates: I) -> Option<Vertex>
where
    I: IntoIterator<Item = Vertex>,
{
    let mut seen = vec![false; k + 1];
    candidates.into_iter().find(|&v| {
        colors[v] == i && {
            seen.iter_mut().for_each(|s| *s = false);
            is_b_vertex_with(g, colors, k, v, &mut seen)
        }
    })
}

fn is_b_vertex_with(g: &Graph, colors: &[Color], k: usize, v: Vertex, seen: &mut [bool]) -> bool {
    let mut count = 0;
    let own = colors[v];
    for &w in g.neighbors(v) {
        let c = colors[w];
        if c != UNCOLORED && c != own && c <= k && !seen[c] {
            seen[c] = true;
            count += 1;
        }
    }
    count + 1 == k
}

/// Minimality test on a proper dense coloring restricted to `domain`
/// (the colored vertices). For each color, collects the b-vertices; dropping
/// `x` kills a b-vertex `u` iff `u == x` or `x` is the only neighbor of `u`
/// carrying `x`'s color.
pub(crate) fn is_minimal_b_array(g: &Graph, colors: &[Color], k: usize, domain: &[Vertex]) -> bool {
    // per b-vertex: how many colored neighbors carry each color
    let mut b_vertices: Vec<Vec<(Vertex, Vec<u32>)>> = vec![Vec::new(); k + 1];
    for &u in domain {
        let mut counts = vec![0u32; k + 1];
        for &w in g.neighbors(u) {
            if colors[w] != UNCOLORED {
                counts[colors[w]] += 1;
            }
        }
        let own = colors[u];
        if (1..=k).all(|c| c == own || counts[c] > 0) {
            b_vertices[own].push((u, counts));
        }
    }
    if (1..=k).any(|c| b_vertices[c].is_empty()) {
        return false;
    }
    domain.iter().all(|&x| {
        let cx = colors[x];
        (1..=k).any(|c| {
            b_vertices[c]
                .iter()
                .all(|(u, counts)| *u == x || (counts[cx] == 1 && g.has_edge(*u, x)))
        })
    })
}

/// Total proper coloring plus one designated b-vertex per color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BCertificate {
    pub k: usize,
    /// `colors[v]` in `1..=k`.
    pub colors: Vec<Color>,
    /// `b_vertices[i - 1]` is the b-vertex of color `i`.
    pub b_vertices: Vec<Vertex>,
}

impl BCertificate {
    /// Picks the smallest b-vertex for every color; `None` if the coloring is
    /// not a proper b-coloring with `k` colors.
    pub fn from_coloring(g: &Graph, k: usize, colors: Vec<Color>) -> Option<BCertificate> {
        if colors.len() != g.n()
            || colors.iter().any(|&c| c == 0 || c > k)
            || first_conflict(g, &colors).is_some()
        {
            return None;
        }
        let b_vertices = (1..=k)
            .map(|i| b_vertex_in(g, &colors, k, i, g.vertices()))
            .collect::<Option<Vec<_>>>()?;
        Some(BCertificate { k, colors, b_vertices })
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            k: self.k,
            colors: self.colors.clone(),
            b_vertices: self.b_vertices.iter().map(|&v| v + 1).collect(),
        }
    }

    /// Rejects only structurally impossible input (a 0 vertex index); all
    /// semantic checks are left to [`verify_certificate`].
    pub fn from_json(json: &CertificateJson) -> Result<BCertificate, String> {
        let b_vertices = json
            .b_vertices
            .iter()
            .map(|&v| v.checked_sub(1).ok_or_else(|| "b-vertex index 0 (indices are 1-based)".to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BCertificate {
            k: json.k,
            colors: json.colors.clone(),
            b_vertices,
        })
    }
}

/// Wire form of a certificate; vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub k: usize,
    pub colors: Vec<Color>,
    pub b_vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    KMismatch { expected: usize, found: usize },
    WrongLength { expected: usize, found: usize },
    ColorOutOfRange { vertex: Vertex, color: Color },
    Monochromatic { u: Vertex, v: Vertex },
    WrongBVertexCount { expected: usize, found: usize },
    InvalidBVertex { color: Color, vertex: Vertex },
    BVertexWrongColor { color: Color, vertex: Vertex, actual: Color },
    BVertexMissesColor { color: Color, vertex: Vertex, missing: Color },
}

impl fmt::Display for Violation {
    // 1-based vertices, as everywhere user-facing
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::KMismatch { expected, found } => {
                write!(f, "certificate has k = {found}, expected {expected}")
            }
            Violation::WrongLength { expected, found } => {
                write!(f, "coloring has {found} entries, graph has {expected} vertices")
            }
            Violation::ColorOutOfRange { vertex, color } => {
                write!(f, "vertex {} has color {color} outside [k]", vertex + 1)
            }
            Violation::Monochromatic { u, v } => {
                write!(f, "edge {{{}, {}}} is monochromatic", u + 1, v + 1)
            }
            Violation::WrongBVertexCount { expected, found } => {
                write!(f, "{found} b-vertices listed, expected {expected}")
            }
            Violation::InvalidBVertex { color, vertex } => {
                write!(f, "b-vertex {} for color {color} does not exist", vertex + 1)
            }
            Violation::BVertexWrongColor { color, vertex, actual } => {
                write!(f, "b-vertex {} for color {color} has color {actual}", vertex + 1)
            }
            Violation::BVertexMissesColor { color, vertex, missing } => write!(
                f,
                "b-vertex {} for color {color} has no neighbor of color {missing}",
                vertex + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every clause of the b-coloring definition and reports each failure.
pub fn verify_certificate(g: &Graph, k: usize, cert: &BCertificate) -> VerificationReport {
    let mut violations = Vec::new();
    if cert.k != k {
        violations.push(Violation::KMismatch {
            expected: k,
            found: cert.k,
        });
    }
    if cert.colors.len() != g.n() {
        violations.push(Violation::WrongLength {
            expected: g.n(),
            found: cert.colors.len(),
        });
        return VerificationReport { violations };
    }
    for (v, &c) in cert.colors.iter().enumerate() {
        if c == 0 || c > k {
            violations.push(Violation::ColorOutOfRange { vertex: v, color: c });
        }
    }
    for (u, v) in g.edges() {
        if cert.colors[u] == cert.colors[v] {
            violations.push(Violation::Monochromatic { u, v });
        }
    }
    if cert.b_vertices.len() != k {
        violations.push(Violation::WrongBVertexCount {
            expected: k,
            found: cert.b_vertices.len(),
        });
    }
    for (idx, &x) in cert.b_vertices.iter().enumerate().take(k) {
        let color = idx + 1;
        if x >= g.n() {
            violations.push(Violation::InvalidBVertex { color, vertex: x });
            continue;
        }
        if cert.colors[x] != color {
            violations.push(Violation::BVertexWrongColor {
                color,
                vertex: x,
                actual: cert.colors[x],
            });
        }
        let mut seen = vec![false; k + 1];
        for &w in g.neighbors(x) {
            if let Some(s) = seen.get_mut(cert.colors[w]) {
                *s = true;
            }
        }
        for missing in (1..=k).filter(|&j| j != color && !seen[j]) {
            violations.push(Violation::BVertexMissesColor {
                color,
                vertex: x,
                missing,
            });
        }
    }
    VerificationReport { violations }
}

/// Result of recoloring the component of a designated vertex `x_i` so that
/// color `i` gets a b-vertex inside the component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecolorOutcome {
    /// `z != x_i` is a b-vertex for color `i` using only component neighbors.
    InternalBVertex { z: Vertex, coloring: Precoloring },
    /// `x_i` has color `i` and the coloring is injective on its closed
    /// component neighborhood.
    InjectiveNeighborhood { coloring: Precoloring },
}

impl RecolorOutcome {
    pub fn coloring(&self) -> &Precoloring {
        match self {
            RecolorOutcome::InternalBVertex { coloring, .. }
            | RecolorOutcome::InjectiveNeighborhood { coloring } => coloring,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn pc(k: usize, pairs: &[(Vertex, Color)]) -> Precoloring {
        Precoloring::from_pairs(k, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn properness() {
        let k3 = Graph::complete(3);
        assert_eq!(is_proper(&k3, &pc(3, &[(0, 1), (1, 2), (2, 3)])), Ok(true));
        assert_eq!(is_proper(&k3, &pc(3, &[(0, 1), (1, 1), (2, 2)])), Ok(false));
        assert_eq!(is_proper(&cycle(4), &pc(1, &[(0, 1), (2, 1)])), Ok(true));
        assert!(is_proper(&k3, &pc(3, &[(7, 1)])).is_err());
    }

    #[test]
    fn b_vertex_examples() {
        let p = pc(3, &[(0, 3), (1, 1), (2, 2), (3, 3), (4, 1)]);
        assert_eq!(b_vertex_for(&path(5), &p, 2), Some(2));
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        let p = pc(3, &[(0, 1), (1, 2), (2, 1), (3, 3), (4, 3), (5, 3)]);
        assert_eq!(b_vertex_for(&k33, &p, 1), None);
        assert_eq!(b_vertex_for(&path(3), &pc(1, &[(1, 1)]), 1), Some(1));
    }

    #[test]
    fn b_precoloring_examples() {
        let p3 = path(3);
        assert!(is_b_precoloring(&p3, &pc(2, &[(0, 1), (1, 2)])));
        assert!(!is_b_precoloring(&p3, &pc(2, &[(0, 1)])));
        assert!(is_b_precoloring(&Graph::complete(3), &pc(3, &[(0, 1), (1, 2), (2, 3)])));
    }

    #[test]
    fn minimality_examples() {
        let p3 = path(3);
        assert!(is_minimal_b_precoloring(&p3, &pc(2, &[(0, 1), (1, 2)])));
        assert!(!is_minimal_b_precoloring(&p3, &pc(2, &[(0, 2), (1, 1), (2, 2)])));
        assert!(!is_minimal_b_precoloring(&p3, &pc(2, &[(0, 1)])));
    }

    #[test]
    fn union_and_switch() {
        let a = pc(2, &[(0, 1)]);
        let b = pc(2, &[(1, 2)]);
        assert_eq!(union_precolorings(&a, &b), Ok(pc(2, &[(0, 1), (1, 2)])));
        assert_eq!(union_precolorings(&a, &Precoloring::new(2)), Ok(a.clone()));
        assert_eq!(
            union_precolorings(&a, &pc(2, &[(0, 2)])),
            Err(ColoringError::OverlappingDomains(0))
        );
        let p = pc(3, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(switch_colors(&p, 1, 2), pc(3, &[(0, 2), (1, 1), (2, 3)]));
        assert_eq!(switch_colors(&p, 2, 2), p);
        assert_eq!(switch_colors(&switch_colors(&p, 1, 3), 1, 3), p);
    }

    #[test]
    fn greedy_examples() {
        let p5 = path(5);
        let out = greedy_extend(&p5, &pc(3, &[(2, 2)])).unwrap();
        assert_eq!(out, vec![1, 3, 2, 1, 2]);
        assert!(first_conflict(&p5, &out).is_none());

        let full = pc(3, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(greedy_extend(&Graph::complete(3), &full).unwrap(), vec![1, 2, 3]);

        let err = greedy_extend(&Graph::complete(4), &pc(3, &[(0, 1), (1, 2), (2, 3)]));
        assert!(matches!(err, Err(ColoringError::DegreeTooHigh { vertex: 3, .. })));
    }

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        let cert = BCertificate {
            k: 3,
            colors: vec![1, 2, 3],
            b_vertices: vec![0, 1, 2],
        };
        assert!(verify_certificate(&k3, 3, &cert).passed());

        let c5 = cycle(5);
        let cert = BCertificate {
            k: 3,
            colors: vec![1, 2, 1, 2, 3],
            b_vertices: vec![0, 3, 4],
        };
        assert!(verify_certificate(&c5, 3, &cert).passed());

        let c4 = cycle(4);
        let cert = BCertificate {
            k: 3,
            colors: vec![1, 2, 1, 3],
            b_vertices: vec![0, 1, 3],
        };
        let report = verify_certificate(&c4, 3, &cert);
        assert!(!report.passed());
        assert!(report.violations.contains(&Violation::BVertexMissesColor {
            color: 2,
            vertex: 1,
            missing: 3
        }));
    }

    #[test]
    fn certificate_json_is_one_based() {
        let cert = BCertificate::from_coloring(&Graph::complete(2), 2, vec![2, 1]).unwrap();
        assert_eq!(cert.b_vertices, vec![1, 0]);
        let json = serde_json::to_string(&cert.to_json()).unwrap();
        assert_eq!(json, r#"{"k":2,"colors":[2,1],"b_vertices":[2,1]}"#);
        let back: CertificateJson = serde_json::from_str(&json).unwrap();
        assert_eq!(BCertificate::from_json(&back).unwrap(), cert);
    }
}
