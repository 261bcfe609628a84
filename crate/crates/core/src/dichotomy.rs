//! Enumeration-driven solvers for the three designated color counts
//! `k = m(G)`, `k = Δ(G)` and `k = m(G) - 1`.

use std::ops::ControlFlow;

use crate::budget::Meter;
use crate::coloring::{first_conflict, greedy_extend_array, Color, Precoloring, UNCOLORED};
use crate::enumerate::{first_success, BudgetSpent, TupleOrder};
use crate::graph::{m_degree, Graph, Vertex};
use crate::outcome::{Algorithm, Run, SolveError, SolveOptions, SolveOutcome};
use crate::prext::{prext_bounded, PrextInstance};

type Extension = Result<Option<Vec<Color>>, BudgetSpent>;

/// Runs `extend` on minimal b-precolorings in stream order until one yields a
/// total coloring.
pub(crate) fn drive<F>(g: &Graph, k: usize, run: &Run, algorithm: Algorithm, extend: F) -> Result<SolveOutcome, SolveError>
where
    F: Fn(&Precoloring, &Meter) -> Extension + Sync,
{
    let meter = &run.meter;
    let found = first_success(g, k, TupleOrder::Increasing, run.jobs, meter, |p| match extend(p, meter) {
        Ok(Some(colors)) => ControlFlow::Break(Ok((colors, p.clone()))),
        Ok(None) => ControlFlow::Continue(()),
        Err(e) => ControlFlow::Break(Err(e)),
    });
    match found {
        Ok(Some(Ok((colors, p)))) => run.yes(g, k, colors, algorithm, None, Some(p)),
        Ok(None) => Ok(run.no(algorithm, None)),
        Ok(Some(Err(BudgetSpent))) | Err(BudgetSpent) => Err(run.exhausted()),
    }
}

/// Tries proper colorings of `rest` (ascending vertices, ascending colors) on
/// top of `colors`, handing each to `finish` until it succeeds.
fn over_rest<F>(
    g: &Graph,
    k: usize,
    colors: &mut Vec<Color>,
    rest: &[Vertex],
    meter: &Meter,
    finish: &mut F,
) -> Extension
where
    F: FnMut(&[Color]) -> Option<Vec<Color>>,
{
    let Some((&v, tail)) = rest.split_first() else {
        return Ok(finish(colors));
    };
    for c in 1..=k {
        if !meter.tick() {
            return Err(BudgetSpent);
        }
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if let Some(done) = over_rest(g, k, colors, tail, meter, finish)? {
            colors[v] = UNCOLORED;
            return Ok(Some(done));
        }
    }
    colors[v] = UNCOLORED;
    Ok(None)
}

fn uncolored_in(p: &Precoloring, set: &[Vertex]) -> Vec<Vertex> {
    set.iter().copied().filter(|&v| !p.contains(v)).collect()
}

fn high_degree(g: &Graph, min_degree: usize) -> Vec<Vertex> {
    g.vertices().filter(|&v| g.degree(v) >= min_degree).collect()
}

/// b-coloring with `k = m(G)` colors.
pub fn solve_k_eq_m(g: &Graph) -> Result<SolveOutcome, SolveError> {
    solve_k_eq_m_with(g, &SolveOptions::default())
}

pub fn solve_k_eq_m_with(g: &Graph, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let run = Run::new(opts);
    let k = m_degree(g);
    if k == 0 {
        return Err(SolveError::Precondition("graph has no vertices".into()));
    }
    let d = high_degree(g, k);
    if d.len() > k {
        return Err(SolveError::Internal(format!("{} vertices of degree >= m = {k}", d.len())));
    }
    drive(g, k, &run, Algorithm::KEqM, |p, meter| {
        let mut colors = p.to_color_array(g.n());
        if first_conflict(g, &colors).is_some() {
            return Ok(None);
        }
        let rest = uncolored_in(p, &d);
        over_rest(g, k, &mut colors, &rest, meter, &mut |partial| {
            // everything left has degree < k, so greedy cannot get stuck
            let mut total = partial.to_vec();
            greedy_extend_array(g, k, &mut total).ok()?;
            Some(total)
        })
    })
}

/// b-coloring with `k = Δ(G)` colors.
pub fn solve_k_eq_delta(g: &Graph) -> Result<SolveOutcome, SolveError> {
    solve_k_eq_delta_with(g, &SolveOptions::default())
}

pub fn solve_k_eq_delta_with(g: &Graph, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let run = Run::new(opts);
    let k = g.max_degree();
    if k == 0 {
        return Err(SolveError::Precondition("graph has no edges (Δ = 0)".into()));
    }
    drive(g, k, &run, Algorithm::KEqDelta, |p, _| Ok(bounded(g, p)))
}

fn bounded(g: &Graph, p: &Precoloring) -> Option<Vec<Color>> {
    let inst = PrextInstance::new(g.clone(), p.clone()).expect("vertices in range");
    prext_bounded(&inst).expect("uncolored degrees are at most k")
}

/// b-coloring with `k = m(G) - 1` colors.
pub fn solve_k_eq_m_minus_1(g: &Graph) -> Result<SolveOutcome, SolveError> {
    solve_k_eq_m_minus_1_with(g, &SolveOptions::default())
}

pub fn solve_k_eq_m_minus_1_with(g: &Graph, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let run = Run::new(opts);
    let m = m_degree(g);
    if m < 2 {
        return Err(SolveError::Precondition(format!("m(G) = {m} < 2")));
    }
    let k = m - 1;
    let d = high_degree(g, k + 1);
    if d.len() > k + 1 {
        return Err(SolveError::Internal(format!(
            "{} vertices of degree >= m = {}",
            d.len(),
            k + 1
        )));
    }
    drive(g, k, &run, Algorithm::KEqMMinus1, |p, meter| {
        let mut colors = p.to_color_array(g.n());
        if first_conflict(g, &colors).is_some() {
            return Ok(None);
        }
        let rest = uncolored_in(p, &d);
        over_rest(g, k, &mut colors, &rest, meter, &mut |partial| {
            let pairs = g.vertices().filter(|&v| partial[v] != UNCOLORED).map(|v| (v, partial[v]));
            let q = Precoloring::from_pairs(k, pairs).expect("colors in range");
            bounded(g, &q)
        })
    })
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

    #[test]
    fn k_eq_m_examples() {
        assert!(solve_k_eq_m(&Graph::complete(4)).unwrap().is_yes());
        let p5 = solve_k_eq_m(&path(5)).unwrap();
        assert!(p5.is_yes());
        assert_eq!(p5.algorithm, Algorithm::KEqM);
        assert!(!solve_k_eq_m(&cycle(4)).unwrap().is_yes());
    }

    #[test]
    fn k_eq_delta_examples() {
        assert!(!solve_k_eq_delta(&cycle(5)).unwrap().is_yes());
        assert!(solve_k_eq_delta(&cycle(4)).unwrap().is_yes());
        assert!(!solve_k_eq_delta(&Graph::complete(4)).unwrap().is_yes());
        assert!(solve_k_eq_delta(&Graph::empty(3)).is_err());
    }

    #[test]
    fn k_eq_m_minus_1_examples() {
        assert!(!solve_k_eq_m_minus_1(&Graph::complete(4)).unwrap().is_yes());
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!solve_k_eq_m_minus_1(&star).unwrap().is_yes());
        assert!(solve_k_eq_m_minus_1(&cycle(4)).unwrap().is_yes());
        assert!(solve_k_eq_m_minus_1(&Graph::empty(1)).is_err());
    }

    #[test]
    fn certificates_extend_witness() {
        for g in [path(5), cycle(6), Graph::complete(5)] {
            let out = solve_k_eq_m(&g).unwrap();
            if let Some(cert) = out.certificate() {
                assert!(out.witness_precoloring.as_ref().unwrap().is_extended_by(&cert.colors));
            }
        }
    }

    #[test]
    fn parallel_agrees() {
        let opts = SolveOptions {
            jobs: 3,
            ..SolveOptions::default()
        };
        for g in [path(6), cycle(5), cycle(7), Graph::complete(4)] {
            assert_eq!(solve_k_eq_m(&g).unwrap().answer, solve_k_eq_m_with(&g, &opts).unwrap().answer);
        }
    }
}
