//! Parameterized solvers: `k = m(G)` (and more generally `ℓ_k(G) <= k`)
//! parameterized by the maximum degree, arbitrary `k` parameterized by the
//! maximum degree plus `ℓ_k(G)`, and the matching kernelizations.

mod matching;
mod recolor;
mod reduction;
mod scatter;

use std::fmt;
use std::str::FromStr;

pub use matching::color_d_injective;
pub use recolor::recolor_component;
pub use reduction::{apply_reduction_rule, Reduction};
pub use scatter::{scattered_set, ScatterSet};

use crate::coloring::{greedy_extend_array, BCertificate, Color, Precoloring, RecolorOutcome, UNCOLORED};
use crate::exact::{exact_in, small_k_coloring};
use crate::graph::{ell_k, induced_components, partition_dtr, Graph, Vertex};
use crate::outcome::{Algorithm, Run, SolveError, SolveOptions, SolveOutcome};
use crate::prext::{prext_exact_metered, PrextInstance};
use matching::distinct_representatives;

/// Alternative colorings of `G[D ∪ B']` tried before giving up on the
/// explicit construction.
const ALTERNATIVE_COLORINGS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    /// Requires `ℓ_k(G) <= k`; size bounded in `k` and Δ.
    M,
    /// Any `k`; size bounded in `ℓ_k(G)` and Δ.
    Ell,
}

impl FromStr for KernelMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "m" => Ok(KernelMode::M),
            "ell" => Ok(KernelMode::Ell),
            _ => Err(format!("unknown kernel mode {s:?} (expected m or ell)")),
        }
    }
}

impl fmt::Display for KernelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMode::M => "m",
            KernelMode::Ell => "ell",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelResult {
    Solved(SolveOutcome),
    Reduced { graph: Graph, k: usize, size_bound: u128 },
}

fn geometric_sum(base: u128, terms: u32) -> u128 {
    (0..terms).fold(0u128, |acc, e| acc.saturating_add(base.saturating_pow(e)))
}

/// `2k + 2kΔ · Σ_{i=1}^{4} (k-1)^{i-1}`.
pub fn kernel_bound_m(k: usize, delta: usize) -> u128 {
    let (k, delta) = (k as u128, delta as u128);
    let sum = geometric_sum(k.saturating_sub(1), 4);
    (2 * k).saturating_add((2 * k * delta).saturating_mul(sum))
}

/// `ℓ + k + (ℓΔ + k(k-1)) · Σ_{i=1}^{ℓ+2} (k-1)^{i-1}`.
pub fn kernel_bound_ell(ell: usize, k: usize, delta: usize) -> u128 {
    let terms = u32::try_from(ell + 2).unwrap_or(u32::MAX);
    let (ell, k, delta) = (ell as u128, k as u128, delta as u128);
    let sum = geometric_sum(k.saturating_sub(1), terms);
    let factor = (ell * delta).saturating_add(k * k.saturating_sub(1));
    (ell + k).saturating_add(factor.saturating_mul(sum))
}

#[derive(Debug, Clone, Copy)]
enum Route {
    M,
    Ell(usize),
}

enum Split {
    /// Fewer than `k` vertices of degree `>= k - 1` remain.
    NoCandidates,
    Case1 { red: Reduction, bound: u128 },
    Case2 { red: Reduction, d: Vec<Vertex>, bprime: Vec<Vertex> },
}

fn split(g: &Graph, k: usize, route: Route) -> Result<Split, SolveError> {
    let red = apply_reduction_rule(g, k);
    let h = &red.graph;
    let parts = partition_dtr(h, k);
    let mut candidates = parts.d_set.clone();
    candidates.extend_from_slice(&parts.t_set);
    candidates.sort_unstable();
    if k >= 2 {
        let mut high = vec![false; h.n()];
        for &v in &candidates {
            high[v] = true;
        }
        if let Some(&v) = parts.r_set.iter().find(|&&v| !h.neighbors(v).iter().any(|&w| high[w])) {
            return Err(SolveError::Internal(format!(
                "low-degree vertex {} survived the reduction rule",
                red.kept[v]
            )));
        }
    }
    if candidates.len() < k {
        return Ok(Split::NoCandidates);
    }
    let min_dist = match route {
        Route::M => 4,
        Route::Ell(ell) => ell + 2,
    };
    let b = scattered_set(h, &candidates, min_dist);
    let bt: Vec<Vertex> = b
        .members
        .iter()
        .copied()
        .filter(|&v| h.degree(v) + 1 == k)
        .collect();
    if bt.len() < k {
        let delta = h.max_degree();
        let bound = match route {
            Route::M => kernel_bound_m(k, delta),
            Route::Ell(ell) => kernel_bound_ell(ell, k, delta),
        };
        if h.n() as u128 > bound {
            log::warn!("reduced graph has {} vertices, above the bound {bound}", h.n());
        }
        return Ok(Split::Case1 { red, bound });
    }
    Ok(Split::Case2 {
        red,
        d: parts.d_set,
        bprime: bt[..k].to_vec(),
    })
}

fn case1(g: &Graph, k: usize, red: &Reduction, run: &mut Run, algorithm: Algorithm) -> Result<SolveOutcome, SolveError> {
    let inner = exact_in(&red.graph, k, run)?;
    match inner.certificate() {
        Some(cert) => {
            let colors = red.lift(g, k, &cert.colors);
            run.yes(g, k, colors, algorithm, Some("case1-kernel"), None)
        }
        None => Ok(run.no(algorithm, Some("case1-kernel"))),
    }
}

fn fallback(g: &Graph, k: usize, red: &Reduction, run: &mut Run, algorithm: Algorithm) -> Result<SolveOutcome, SolveError> {
    log::warn!("explicit construction failed for k = {k}; solving the reduced graph exactly");
    run.fallback_used = true;
    let inner = exact_in(&red.graph, k, run)?;
    match inner.certificate() {
        Some(cert) => {
            let colors = red.lift(g, k, &cert.colors);
            run.yes(g, k, colors, algorithm, Some("construction-fallback"), None)
        }
        None => Ok(run.no(algorithm, Some("construction-fallback"))),
    }
}

/// Gives each `(x, i)` the colors `[k] \ {i}` on its neighborhood, assigning
/// the missing ones to uncolored neighbors by a matching that avoids colors
/// already present next to each neighbor, then colors the rest greedily.
fn complete_neighborhoods(
    h: &Graph,
    k: usize,
    targets: &[(Vertex, Color)],
    mut colors: Vec<Color>,
    conflicts: &mut u64,
) -> Option<Vec<Color>> {
    for &(x, i) in targets {
        let mut present = vec![false; k + 1];
        present[i] = true;
        let mut open = Vec::new();
        for &y in h.neighbors(x) {
            match colors[y] {
                UNCOLORED => open.push(y),
                c if present[c] => return None,
                c => present[c] = true,
            }
        }
        let missing: Vec<Color> = (1..=k).filter(|&c| !present[c]).collect();
        if missing.len() != open.len() {
            return None;
        }
        let clashes = |y: Vertex, c: Color| h.neighbors(y).iter().any(|&w| colors[w] == c);
        if open.iter().zip(&missing).any(|(&y, &c)| clashes(y, c)) {
            *conflicts += 1;
            log::debug!("ascending bijection around vertex {x} would create a monochromatic edge");
        }
        let allowed: Vec<Vec<Color>> = open
            .iter()
            .map(|&y| missing.iter().copied().filter(|&c| !clashes(y, c)).collect())
            .collect();
        let chosen = distinct_representatives(&allowed, k)?;
        for (&y, c) in open.iter().zip(chosen) {
            colors[y] = c;
        }
    }
    greedy_extend_array(h, k, &mut colors).ok()?;
    BCertificate::from_coloring(h, k, colors.clone()).map(|_| colors)
}

fn base_colors(h: &Graph, bprime: &[Vertex]) -> Vec<Color> {
    let mut colors = vec![UNCOLORED; h.n()];
    for (idx, &x) in bprime.iter().enumerate() {
        colors[x] = idx + 1;
    }
    colors
}

/// Injective colorings of `d` (lexicographic) that avoid the color of an
/// adjacent b-vertex, handed to `visit` until it returns a result.
fn injective_d_colorings<F>(
    h: &Graph,
    k: usize,
    d: &[Vertex],
    colors: &mut Vec<Color>,
    taken: &mut Vec<bool>,
    run: &Run,
    visit: &mut F,
) -> Result<Option<Vec<Color>>, SolveError>
where
    F: FnMut(&[Color]) -> Option<Vec<Color>>,
{
    let Some((&v, rest)) = d.split_first() else {
        return Ok(visit(colors));
    };
    for c in 1..=k {
        if !run.meter.tick() {
            return Err(run.exhausted());
        }
        if taken[c] || h.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        taken[c] = true;
        let found = injective_d_colorings(h, k, rest, colors, taken, run, visit)?;
        taken[c] = false;
        colors[v] = UNCOLORED;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn case2_m(
    g: &Graph,
    k: usize,
    red: &Reduction,
    d: &[Vertex],
    bprime: &[Vertex],
    run: &mut Run,
    algorithm: Algorithm,
) -> Result<SolveOutcome, SolveError> {
    let h = &red.graph;
    let targets: Vec<(Vertex, Color)> = bprime.iter().enumerate().map(|(idx, &x)| (x, idx + 1)).collect();
    let mut colors = base_colors(h, bprime);
    for (v, c) in color_d_injective(h, d, bprime, k)?.iter() {
        colors[v] = c;
    }
    let mut found = complete_neighborhoods(h, k, &targets, colors, &mut run.naive_bijection_conflicts);
    if found.is_none() {
        log::debug!("first injective coloring of D failed; trying all of them");
        let mut colors = base_colors(h, bprime);
        let mut taken = vec![false; k + 1];
        let mut conflicts = 0;
        found = injective_d_colorings(h, k, d, &mut colors, &mut taken, run, &mut |partial| {
            complete_neighborhoods(h, k, &targets, partial.to_vec(), &mut conflicts)
        })?;
        run.naive_bijection_conflicts += conflicts;
    }
    match found {
        Some(colors) => {
            let lifted = red.lift(g, k, &colors);
            run.yes(g, k, lifted, algorithm, Some("case2-construct"), None)
        }
        None => fallback(g, k, red, run, algorithm),
    }
}

/// Decides `k` colors when `ℓ_k(G) <= k` (in particular `k = m(G)`).
pub fn solve_m_param_delta(g: &Graph, k: usize) -> Result<SolveOutcome, SolveError> {
    solve_m_param_delta_with(g, k, &SolveOptions::default())
}

pub fn solve_m_param_delta_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    check_m_route(g, k)?;
    let mut run = Run::new(opts);
    m_route(g, k, &mut run, Algorithm::FptDelta)
}

fn check_m_route(g: &Graph, k: usize) -> Result<(), SolveError> {
    if k == 0 {
        return Err(SolveError::Precondition("k must be at least 1".into()));
    }
    let ell = ell_k(g, k);
    if ell > k {
        return Err(SolveError::Precondition(format!("ℓ_k = {ell} exceeds k = {k}")));
    }
    Ok(())
}

fn m_route(g: &Graph, k: usize, run: &mut Run, algorithm: Algorithm) -> Result<SolveOutcome, SolveError> {
    match split(g, k, Route::M)? {
        Split::NoCandidates => Ok(run.no(algorithm, Some("trivial-no"))),
        Split::Case1 { red, .. } => case1(g, k, &red, run, algorithm),
        Split::Case2 { red, d, bprime } => case2_m(g, k, &red, &d, &bprime, run, algorithm),
    }
}

/// Decides `k` colors for any `k`, exploiting small Δ and small `ℓ_k(G)`.
pub fn solve_delta_ell(g: &Graph, k: usize) -> Result<SolveOutcome, SolveError> {
    solve_delta_ell_with(g, k, &SolveOptions::default())
}

pub fn solve_delta_ell_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if k == 0 {
        return Err(SolveError::Precondition("k must be at least 1".into()));
    }
    let mut run = Run::new(opts);
    let algorithm = Algorithm::FptEll;
    if let Some(out) = ell_shortcuts(g, k, &mut run)? {
        return Ok(out);
    }
    let ell = ell_k(g, k);
    match split(g, k, Route::Ell(ell))? {
        Split::NoCandidates => Ok(run.no(algorithm, Some("trivial-no"))),
        Split::Case1 { red, .. } => case1(g, k, &red, &mut run, algorithm),
        Split::Case2 { red, d, bprime } => case2_ell(g, k, &red, &d, &bprime, &mut run),
    }
}

fn ell_shortcuts(g: &Graph, k: usize, run: &mut Run) -> Result<Option<SolveOutcome>, SolveError> {
    let algorithm = Algorithm::FptEll;
    if ell_k(g, k) <= k {
        return m_route(g, k, run, algorithm).map(Some);
    }
    if k > g.max_degree() + 1 {
        return Ok(Some(run.no(algorithm, Some("trivial-no"))));
    }
    if k <= 2 {
        return match small_k_coloring(g, k) {
            Some(colors) => run.yes(g, k, colors, algorithm, Some("small-k"), None).map(Some),
            None => Ok(Some(run.no(algorithm, Some("small-k")))),
        };
    }
    Ok(None)
}

enum EllAttempt {
    Colored(Vec<Color>),
    NotColorable,
    Failed,
}

fn case2_ell(g: &Graph, k: usize, red: &Reduction, d: &[Vertex], bprime: &[Vertex], run: &mut Run) -> Result<SolveOutcome, SolveError> {
    let algorithm = Algorithm::FptEll;
    match construct_ell(&red.graph, k, d, bprime, run)? {
        EllAttempt::Colored(colors) => {
            let lifted = red.lift(g, k, &colors);
            run.yes(g, k, lifted, algorithm, Some("case2-construct"), None)
        }
        EllAttempt::NotColorable => Ok(run.no(algorithm, Some("case2-not-k-colorable"))),
        EllAttempt::Failed => fallback(g, k, red, run, algorithm),
    }
}

fn construct_ell(h: &Graph, k: usize, d: &[Vertex], bprime: &[Vertex], run: &mut Run) -> Result<EllAttempt, SolveError> {
    let mut core: Vec<Vertex> = d.iter().chain(bprime).copied().collect();
    core.sort_unstable();
    let components = induced_components(h, &core);
    let mut owner: Vec<Option<(Vertex, Color)>> = Vec::with_capacity(components.len());
    for comp in &components {
        let inside: Vec<(Vertex, Color)> = bprime
            .iter()
            .enumerate()
            .filter(|(_, x)| comp.binary_search(x).is_ok())
            .map(|(idx, &x)| (x, idx + 1))
            .collect();
        if inside.len() > 1 {
            return Err(SolveError::Internal(format!(
                "component {comp:?} of G[D ∪ B'] holds {} designated vertices",
                inside.len()
            )));
        }
        owner.push(inside.first().copied());
    }
    let (sub, original) = h.induced_subgraph(&core);
    let inst = PrextInstance::new(sub.clone(), Precoloring::new(k)).expect("empty precoloring");
    let first = prext_exact_metered(&inst, &run.meter).map_err(|_| run.exhausted())?;
    let Some(first) = first else {
        return Ok(EllAttempt::NotColorable);
    };
    if let Some(colors) = attempt_ell(h, k, &components, &owner, &original, &first, run)? {
        return Ok(EllAttempt::Colored(colors));
    }
    log::debug!("construction failed on the first coloring of G[D ∪ B']; trying alternatives");
    let mut alternatives = Vec::new();
    proper_colorings(&sub, k, &mut vec![UNCOLORED; sub.n()], 0, ALTERNATIVE_COLORINGS, &mut alternatives, run)?;
    for start in alternatives.iter().filter(|c| **c != first) {
        if let Some(colors) = attempt_ell(h, k, &components, &owner, &original, start, run)? {
            return Ok(EllAttempt::Colored(colors));
        }
    }
    Ok(EllAttempt::Failed)
}

fn attempt_ell(
    h: &Graph,
    k: usize,
    components: &[Vec<Vertex>],
    owner: &[Option<(Vertex, Color)>],
    original: &[Vertex],
    start: &[Color],
    run: &mut Run,
) -> Result<Option<Vec<Color>>, SolveError> {
    let mut colors = vec![UNCOLORED; h.n()];
    for (idx, &v) in original.iter().enumerate() {
        colors[v] = start[idx];
    }
    let mut targets = Vec::new();
    for (comp, own) in components.iter().zip(owner) {
        let Some((x, i)) = *own else { continue };
        if comp.len() == 1 {
            colors[x] = i;
            targets.push((x, i));
            continue;
        }
        let p = Precoloring::from_pairs(k, comp.iter().map(|&v| (v, colors[v]))).expect("colors in range");
        let outcome = recolor_component(h, comp, x, i, &p, k)?;
        for (v, c) in outcome.coloring().iter() {
            colors[v] = c;
        }
        if let RecolorOutcome::InjectiveNeighborhood { .. } = outcome {
            targets.push((x, i));
        }
    }
    Ok(complete_neighborhoods(h, k, &targets, colors, &mut run.naive_bijection_conflicts))
}

/// Up to `limit` proper `k`-colorings of `g` in lexicographic order.
fn proper_colorings(g: &Graph, k: usize, colors: &mut Vec<Color>, v: Vertex, limit: usize, out: &mut Vec<Vec<Color>>, run: &Run) -> Result<(), SolveError> {
    if out.len() >= limit {
        return Ok(());
    }
    if v == g.n() {
        out.push(colors.clone());
        return Ok(());
    }
    for c in 1..=k {
        if !run.meter.tick() {
            return Err(run.exhausted());
        }
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        proper_colorings(g, k, colors, v + 1, limit, out, run)?;
        colors[v] = UNCOLORED;
    }
    Ok(())
}

/// Shrinks `(g, k)` to an equivalent instance of bounded size, or solves it
/// outright when the explicit construction or a trivial answer applies.
pub fn kernelize(g: &Graph, k: usize, mode: KernelMode) -> Result<KernelResult, SolveError> {
    kernelize_with(g, k, mode, &SolveOptions::default())
}

pub fn kernelize_with(g: &Graph, k: usize, mode: KernelMode, opts: &SolveOptions) -> Result<KernelResult, SolveError> {
    let mut run = Run::new(opts);
    let solved = |out: SolveOutcome| Ok(KernelResult::Solved(out));
    let reduced = |red: Reduction, bound: u128| {
        Ok(KernelResult::Reduced {
            graph: red.graph,
            k,
            size_bound: bound,
        })
    };
    match mode {
        KernelMode::M => {
            check_m_route(g, k)?;
            let algorithm = Algorithm::FptDelta;
            match split(g, k, Route::M)? {
                Split::NoCandidates => solved(run.no(algorithm, Some("trivial-no"))),
                Split::Case1 { red, bound } => reduced(red, bound),
                Split::Case2 { red, d, bprime } => solved(case2_m(g, k, &red, &d, &bprime, &mut run, algorithm)?),
            }
        }
        KernelMode::Ell => {
            if k == 0 {
                return Err(SolveError::Precondition("k must be at least 1".into()));
            }
            let ell = ell_k(g, k);
            if ell <= k {
                return kernelize_with(g, k, KernelMode::M, opts);
            }
            if let Some(out) = ell_shortcuts(g, k, &mut run)? {
                return solved(out);
            }
            match split(g, k, Route::Ell(ell))? {
                Split::NoCandidates => solved(run.no(Algorithm::FptEll, Some("trivial-no"))),
                Split::Case1 { red, bound } => reduced(red, bound),
                Split::Case2 { red, d, bprime } => solved(case2_ell(g, k, &red, &d, &bprime, &mut run)?),
            }
        }
    }
}
