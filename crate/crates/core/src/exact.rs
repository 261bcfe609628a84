//! Exact exponential b-coloring decision, the b-chromatic number, and a
//! brute-force enumerator of minimal b-precolorings used as a test oracle.

use std::collections::BTreeSet;

use crate::coloring::{Color, Precoloring, UNCOLORED};
use crate::dichotomy::drive;
use crate::graph::{m_degree, Graph, Vertex};
use crate::outcome::{Algorithm, ExactMode, Run, SolveError, SolveOptions, SolveOutcome};
use crate::prext::{prext_exact_metered, PrextInstance};

/// Default vertex cap for [`brute_enumerate_minimal_b_precolorings`].
pub const BRUTE_FORCE_CAP: usize = 8;

/// Decides whether `g` has a b-coloring with `k` colors.
pub fn solve_exact(g: &Graph, k: usize) -> Result<SolveOutcome, SolveError> {
    solve_exact_with(g, k, &SolveOptions::default())
}

pub fn solve_exact_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let mut run = Run::new(opts);
    exact_in(g, k, &mut run)
}

pub(crate) fn exact_in(g: &Graph, k: usize, run: &mut Run) -> Result<SolveOutcome, SolveError> {
    if k == 0 {
        return Err(SolveError::Precondition("k must be at least 1".into()));
    }
    match run.exact_mode {
        ExactMode::PrecoloringDriven => precoloring_driven(g, k, run),
        ExactMode::Direct => direct(g, k, run),
    }
}

fn precoloring_driven(g: &Graph, k: usize, run: &mut Run) -> Result<SolveOutcome, SolveError> {
    drive(g, k, run, Algorithm::Exact, |p, meter| {
        let inst = PrextInstance::new(g.clone(), p.clone()).expect("enumerated vertices are in range");
        prext_exact_metered(&inst, meter)
    })
}

fn direct(g: &Graph, k: usize, run: &mut Run) -> Result<SolveOutcome, SolveError> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = Direct {
        g,
        k,
        order,
        colors: vec![UNCOLORED; g.n()],
        run,
    };
    if search.descend(0, 0)? {
        let colors = search.colors;
        run.yes(g, k, colors, Algorithm::Exact, None, None)
    } else {
        Ok(run.no(Algorithm::Exact, None))
    }
}

struct Direct<'a, 'r> {
    g: &'a Graph,
    k: usize,
    order: Vec<Vertex>,
    colors: Vec<Color>,
    run: &'r Run,
}

impl Direct<'_, '_> {
    fn descend(&mut self, pos: usize, max_used: Color) -> Result<bool, SolveError> {
        if !self.run.meter.tick() {
            return Err(self.run.exhausted());
        }
        if self.k - max_used > self.order.len() - pos || !self.b_vertices_possible() {
            return Ok(false);
        }
        if pos == self.order.len() {
            return Ok(true);
        }
        let v = self.order[pos];
        // colors above max_used + 1 are interchangeable with it
        for c in 1..=self.k.min(max_used + 1) {
            if self.g.neighbors(v).iter().any(|&w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            if self.descend(pos + 1, max_used.max(c))? {
                return Ok(true);
            }
        }
        self.colors[v] = UNCOLORED;
        Ok(false)
    }

    /// Every color still has a vertex that can carry it and can still see all
    /// other colors.
    fn b_vertices_possible(&self) -> bool {
        let k = self.k;
        let mut possible = vec![false; k + 1];
        let mut seen = vec![false; k + 1];
        for v in self.g.vertices() {
            seen.iter_mut().for_each(|s| *s = false);
            let mut reach = 0;
            for &w in self.g.neighbors(v) {
                let c = self.colors[w];
                if c == UNCOLORED {
                    reach += 1;
                } else if !seen[c] {
                    seen[c] = true;
                    reach += 1;
                }
            }
            if reach + 1 < k {
                continue;
            }
            match self.colors[v] {
                UNCOLORED => (1..=k).filter(|&c| !seen[c]).for_each(|c| possible[c] = true),
                c => possible[c] = true,
            }
        }
        possible[1..].iter().all(|&p| p)
    }
}

/// Largest `k` admitting a b-coloring, searched downward from `m(g)`.
pub fn b_chromatic_number(g: &Graph) -> Result<(usize, SolveOutcome), SolveError> {
    b_chromatic_number_with(g, &SolveOptions::default())
}

pub fn b_chromatic_number_with(g: &Graph, opts: &SolveOptions) -> Result<(usize, SolveOutcome), SolveError> {
    if g.n() == 0 {
        return Err(SolveError::Precondition("graph has no vertices".into()));
    }
    let mut run = Run::new(opts);
    for k in (1..=m_degree(g)).rev() {
        let outcome = exact_in(g, k, &mut run)?;
        if outcome.is_yes() {
            return Ok((k, outcome));
        }
    }
    Err(SolveError::Internal("no b-coloring found down to k = 1".into()))
}

/// All minimal b-precolorings by exhaustion over every partial coloring with
/// at most `k^2` colored vertices. Minimality is checked against every proper
/// subset of the domain.
pub fn brute_enumerate_minimal_b_precolorings(g: &Graph, k: usize) -> Result<BTreeSet<Precoloring>, SolveError> {
    brute_enumerate_capped(g, k, BRUTE_FORCE_CAP)
}

pub fn brute_enumerate_capped(g: &Graph, k: usize, cap: usize) -> Result<BTreeSet<Precoloring>, SolveError> {
    let n = g.n();
    if n > cap {
        return Err(SolveError::Precondition(format!(
            "brute force limited to {cap} vertices, graph has {n}"
        )));
    }
    let mut out = BTreeSet::new();
    if k == 0 {
        return Ok(out);
    }
    let mut colors = vec![UNCOLORED; n];
    loop {
        let domain: Vec<Vertex> = (0..n).filter(|&v| colors[v] != UNCOLORED).collect();
        if !domain.is_empty() && domain.len() <= k * k && is_b_partial(g, &colors, k) && is_minimal_brute(g, &colors, k, &domain) {
            out.insert(
                Precoloring::from_pairs(k, domain.iter().map(|&v| (v, colors[v]))).expect("colors in range"),
            );
        }
        // odometer over (k + 1)^n partial colorings
        let mut i = 0;
        while i < n && colors[i] == k {
            colors[i] = UNCOLORED;
            i += 1;
        }
        if i == n {
            break;
        }
        colors[i] += 1;
    }
    Ok(out)
}

/// Proper on the colored vertices, and each color has a colored vertex whose
/// colored neighbors show all other colors.
fn is_b_partial(g: &Graph, colors: &[Color], k: usize) -> bool {
    let proper = g
        .edges()
        .all(|(u, v)| colors[u] == UNCOLORED || colors[u] != colors[v]);
    proper
        && (1..=k).all(|i| {
            g.vertices().any(|v| {
                colors[v] == i
                    && (1..=k).all(|j| j == i || g.neighbors(v).iter().any(|&w| colors[w] == j))
            })
        })
}

fn is_minimal_brute(g: &Graph, colors: &[Color], k: usize, domain: &[Vertex]) -> bool {
    let full = (1u32 << domain.len()) - 1;
    let mut sub = colors.to_vec();
    (1..full).all(|mask| {
        for (bit, &v) in domain.iter().enumerate() {
            sub[v] = if mask >> bit & 1 == 1 { colors[v] } else { UNCOLORED };
        }
        !is_b_partial(g, &sub, k)
    })
}

/// Exact answer for `k <= 2` without search: one color needs an edgeless
/// graph, two colors a bipartite graph with at least one edge.
pub(crate) fn small_k_coloring(g: &Graph, k: usize) -> Option<Vec<Color>> {
    match k {
        1 => (g.edge_count() == 0).then(|| vec![1; g.n()]),
        2 if g.edge_count() > 0 => g.two_coloring(),
        _ => None,
    }
}
