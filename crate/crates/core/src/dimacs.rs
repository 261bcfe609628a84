//! DIMACS edge format (`c` comments, one `p edge n m` line, `e u v` lines with
//! 1-based endpoints).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct DimacsError {
    /// 1-based; 0 when the error is not tied to a particular line.
    pub line: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsErrorKind {
    #[error("malformed line: {0:?}")]
    Malformed(String),
    #[error("duplicate problem line")]
    DuplicateProblemLine,
    #[error("edge line before problem line")]
    EdgeBeforeProblemLine,
    #[error("missing `p edge n m` line")]
    MissingProblemLine,
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("endpoint {endpoint} out of range [1, {n}]")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("problem line declares {declared} edges but {lines} edge lines ({distinct} distinct edges) were read")]
    EdgeCountMismatch {
        declared: usize,
        lines: usize,
        distinct: usize,
    },
}

fn err(line: usize, kind: DimacsErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

/// Parses DIMACS text. Repeated edges (in either orientation) are collapsed
/// with a warning. The declared edge count must match either the number of
/// `e` lines or the number of distinct edges.
pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || err(line_no, DimacsErrorKind::Malformed(line.to_string()));
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line_no, DimacsErrorKind::DuplicateProblemLine));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(malformed());
                }
                let n: usize = fields[2].parse().map_err(|_| malformed())?;
                let m: usize = fields[3].parse().map_err(|_| malformed())?;
                if n == 0 {
                    return Err(err(line_no, DimacsErrorKind::NoVertices));
                }
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| err(line_no, DimacsErrorKind::EdgeBeforeProblemLine))?;
                if fields.len() != 3 {
                    return Err(malformed());
                }
                let u: usize = fields[1].parse().map_err(|_| malformed())?;
                let v: usize = fields[2].parse().map_err(|_| malformed())?;
                for endpoint in [u, v] {
                    if endpoint == 0 || endpoint > n {
                        return Err(err(line_no, DimacsErrorKind::EndpointOutOfRange { endpoint, n }));
                    }
                }
                if u == v {
                    return Err(err(line_no, DimacsErrorKind::SelfLoop(u)));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(malformed()),
        }
    }
    let (n, declared) = header.ok_or_else(|| err(0, DimacsErrorKind::MissingProblemLine))?;
    let lines = edges.len();
    let graph = Graph::from_edges(n, edges).expect("endpoints validated above");
    let distinct = graph.edge_count();
    if declared != lines && declared != distinct {
        return Err(err(
            0,
            DimacsErrorKind::EdgeCountMismatch {
                declared,
                lines,
                distinct,
            },
        ));
    }
    if distinct < lines {
        log::warn!("{} repeated edge line(s) collapsed", lines - distinct);
    }
    Ok(graph)
}

/// Serializes `g` as `p edge n m` followed by one `e u v` line per edge,
/// `u < v`, in lexicographic order.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
