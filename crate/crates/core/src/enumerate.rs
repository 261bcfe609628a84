//! Enumeration of minimal b-precolorings.
//!
//! A minimal b-precoloring with `k` colors colors exactly `k` b-vertices
//! `x_1..x_k` (with `x_i` colored `i`) plus, for every `x_i`, a set of `k - 1`
//! neighbors carrying the colors `[k] \ {i}` bijectively. The stream guesses
//! the b-vertex tuple first, then for `i = 1..k` the witness set of `x_i`
//! (lexicographic over the sorted neighbor list) together with its bijection
//! (lexicographic over the color sequence). Guesses that clash with colors
//! already placed, or that create a monochromatic edge, are cut immediately;
//! every surviving leaf is tested for minimality and emitted unless an equal
//! precoloring was emitted before.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::budget::Meter;
use crate::coloring::{is_minimal_b_array, Color, Precoloring, UNCOLORED};
use crate::graph::{Graph, Vertex};

/// Which b-vertex tuples are guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TupleOrder {
    /// Every ordered tuple of distinct vertices: yields every minimal
    /// b-precoloring.
    #[default]
    Ordered,
    /// Only increasing tuples `x_1 < .. < x_k`: yields at least one member of
    /// every class of minimal b-precolorings equal up to renaming colors.
    Increasing,
}

type Assignment = Vec<(Vertex, Color)>;

struct Frame {
    options: Vec<Assignment>,
    next: usize,
    applied: Vec<Vertex>,
}

/// Lazy, deterministic, duplicate-free stream of minimal b-precolorings.
pub struct PrecoloringStream<'a> {
    g: &'a Graph,
    k: usize,
    order: TupleOrder,
    first: Option<Vertex>,
    candidates: Vec<Vertex>,
    colors: Vec<Color>,
    b_vertices: Vec<Vertex>,
    stack: Vec<Frame>,
    seen: HashSet<Precoloring>,
    meter: Option<&'a Meter>,
    started: bool,
    done: bool,
    exhausted: bool,
}

/// All minimal b-precolorings of `g` with `k` colors.
pub fn enumerate_minimal_b_precolorings(g: &Graph, k: usize) -> PrecoloringStream<'_> {
    PrecoloringStream::new(g, k, TupleOrder::Ordered)
}

impl<'a> PrecoloringStream<'a> {
    pub fn new(g: &'a Graph, k: usize, order: TupleOrder) -> Self {
        // a b-vertex needs k - 1 neighbors
        let candidates = g
            .vertices()
            .filter(|&v| g.degree(v) + 1 >= k)
            .collect();
        PrecoloringStream {
            g,
            k,
            order,
            first: None,
            candidates,
            colors: vec![UNCOLORED; g.n()],
            b_vertices: Vec::with_capacity(k),
            stack: Vec::new(),
            seen: HashSet::new(),
            meter: None,
            started: false,
            done: k == 0,
            exhausted: false,
        }
    }

    /// Restricts the stream to guesses whose first b-vertex is `x1`.
    pub fn with_first_b_vertex(mut self, x1: Vertex) -> Self {
        self.first = Some(x1);
        self
    }

    pub fn with_meter(mut self, meter: &'a Meter) -> Self {
        self.meter = Some(meter);
        self
    }

    /// True if the stream stopped because the meter ran out.
    pub fn budget_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Vertices that may serve as the first b-vertex, in guess order.
    pub fn first_b_vertex_candidates(&self) -> Vec<Vertex> {
        self.candidates.clone()
    }

    fn options_at(&self, depth: usize) -> Vec<Assignment> {
        if depth < self.k {
            let color = depth + 1;
            let lower = match (self.order, self.b_vertices.last()) {
                (TupleOrder::Increasing, Some(&prev)) => prev + 1,
                _ => 0,
            };
            self.candidates
                .iter()
                .copied()
                .filter(|&v| v >= lower && self.colors[v] == UNCOLORED)
                .filter(|&v| depth > 0 || self.first.is_none_or(|f| f == v))
                .map(|v| vec![(v, color)])
                .collect()
        } else {
            let i = depth - self.k + 1;
            self.witness_options(self.b_vertices[i - 1], i)
        }
    }

    /// All `(Z_i, pi_i)` choices for b-vertex `x` of color `i` that agree with
    /// the colors already placed and keep the precoloring proper. Only the
    /// newly colored vertices are returned.
    fn witness_options(&self, x: Vertex, i: Color) -> Vec<Assignment> {
        let k = self.k;
        let nbrs = self.g.neighbors(x);
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k - 1);
        let mut used = vec![false; k + 1];
        used[i] = true;
        self.combinations(nbrs, 0, &mut chosen, &mut used, &mut |members, used| {
            let free: Vec<Vertex> = members
                .iter()
                .copied()
                .filter(|&v| self.colors[v] == UNCOLORED)
                .collect();
            let missing: Vec<Color> = (1..=k).filter(|&c| !used[c]).collect();
            let mut taken = vec![false; missing.len()];
            let mut current = Vec::with_capacity(free.len());
            self.bijections(&free, &missing, &mut taken, &mut current, &mut out);
        });
        out
    }

    fn combinations<F>(
        &self,
        nbrs: &[Vertex],
        from: usize,
        chosen: &mut Vec<Vertex>,
        used: &mut [bool],
        emit: &mut F,
    ) where
        F: FnMut(&[Vertex], &[bool]),
    {
        let need = self.k - 1 - chosen.len();
        if need == 0 {
            emit(chosen, used);
            return;
        }
        for idx in from..=nbrs.len().saturating_sub(need) {
            if idx >= nbrs.len() {
                break;
            }
            let v = nbrs[idx];
            let c = self.colors[v];
            if c != UNCOLORED {
                // precolored members must show distinct colors other than i
                if used[c] {
                    continue;
                }
                used[c] = true;
            }
            chosen.push(v);
            self.combinations(nbrs, idx + 1, chosen, used, emit);
            chosen.pop();
            if c != UNCOLORED {
                used[c] = false;
            }
        }
    }

    fn bijections(
        &self,
        free: &[Vertex],
        missing: &[Color],
        taken: &mut [bool],
        current: &mut Assignment,
        out: &mut Vec<Assignment>,
    ) {
        let pos = current.len();
        if pos == free.len() {
            out.push(current.clone());
            return;
        }
        let u = free[pos];
        for (ci, &c) in missing.iter().enumerate() {
            if taken[ci] {
                continue;
            }
            let clash = self.g.neighbors(u).iter().any(|&w| self.colors[w] == c)
                || current
                    .iter()
                    .any(|&(w, cw)| cw == c && self.g.has_edge(u, w));
            if clash {
                continue;
            }
            taken[ci] = true;
            current.push((u, c));
            self.bijections(free, missing, taken, current, out);
            current.pop();
            taken[ci] = false;
        }
    }

    fn leaf(&mut self) -> Option<Precoloring> {
        let domain: Vec<Vertex> = self
            .g
            .vertices()
            .filter(|&v| self.colors[v] != UNCOLORED)
            .collect();
        if !is_minimal_b_array(self.g, &self.colors, self.k, &domain) {
            return None;
        }
        let p = Precoloring::from_pairs(self.k, domain.iter().map(|&v| (v, self.colors[v])))
            .expect("colors are in range");
        if self.seen.insert(p.clone()) {
            Some(p)
        } else {
            None
        }
    }
}

impl Iterator for PrecoloringStream<'_> {
    type Item = Precoloring;

    fn next(&mut self) -> Option<Precoloring> {
        if !self.started && !self.done {
            self.started = true;
            let options = self.options_at(0);
            self.stack.push(Frame {
                options,
                next: 0,
                applied: Vec::new(),
            });
        }
        while !self.done {
            let depth = self.stack.len() - 1;
            let top = self.stack.last_mut().unwrap();
            for v in top.applied.drain(..) {
                self.colors[v] = UNCOLORED;
            }
            if top.next == top.options.len() {
                self.stack.pop();
                if self.stack.is_empty() {
                    self.done = true;
                }
                continue;
            }
            let option = std::mem::take(&mut top.options[top.next]);
            top.next += 1;
            for &(v, c) in &option {
                if self.colors[v] == UNCOLORED {
                    self.colors[v] = c;
                    top.applied.push(v);
                }
            }
            if depth < self.k {
                self.b_vertices.truncate(depth);
                self.b_vertices.push(option[0].0);
            }
            if let Some(meter) = self.meter {
                if !meter.tick() {
                    self.exhausted = true;
                    self.done = true;
                    break;
                }
            }
            if depth + 1 == 2 * self.k {
                if let Some(p) = self.leaf() {
                    return Some(p);
                }
            } else {
                let options = self.options_at(depth + 1);
                self.stack.push(Frame {
                    options,
                    next: 0,
                    applied: Vec::new(),
                });
            }
        }
        None
    }
}

/// Materializes the stream, splitting the guesses by first b-vertex across
/// `jobs` workers. The result is identical to the sequential stream.
pub fn enumerate_parallel(g: &Graph, k: usize, order: TupleOrder, jobs: usize) -> Vec<Precoloring> {
    enumerate_parallel_with(g, k, order, jobs, &Meter::unlimited()).expect("unlimited meter")
}

/// [`enumerate_parallel`] charged against `meter`.
pub fn enumerate_parallel_with(
    g: &Graph,
    k: usize,
    order: TupleOrder,
    jobs: usize,
    meter: &Meter,
) -> Result<Vec<Precoloring>, BudgetSpent> {
    let collect = |stream: PrecoloringStream<'_>| {
        let mut stream = stream.with_meter(meter);
        let found: Vec<Precoloring> = stream.by_ref().collect();
        if stream.budget_exhausted() {
            Err(BudgetSpent)
        } else {
            Ok(found)
        }
    };
    if jobs <= 1 {
        return collect(PrecoloringStream::new(g, k, order));
    }
    let firsts = PrecoloringStream::new(g, k, order).first_b_vertex_candidates();
    let parts: Vec<Result<Vec<Precoloring>, BudgetSpent>> = in_pool(jobs, || {
        firsts
            .par_iter()
            .map(|&x1| collect(PrecoloringStream::new(g, k, order).with_first_b_vertex(x1)))
            .collect()
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?.into_iter().filter(|p| seen.insert(p.clone())));
    }
    Ok(out)
}

/// Feeds minimal b-precolorings to `f` in stream order and returns the first
/// `Break` value. With `jobs > 1` the stream is split by first b-vertex; the
/// lowest split with a hit wins, so the answer equals the sequential one.
/// Returns `Err(())` if the meter ran out before a hit was found.
pub fn first_success<T, F>(
    g: &Graph,
    k: usize,
    order: TupleOrder,
    jobs: usize,
    meter: &Meter,
    f: F,
) -> Result<Option<T>, BudgetSpent>
where
    T: Send,
    F: Fn(&Precoloring) -> ControlFlow<T> + Sync,
{
    if jobs <= 1 {
        let mut stream = PrecoloringStream::new(g, k, order).with_meter(meter);
        for p in stream.by_ref() {
            if let ControlFlow::Break(t) = f(&p) {
                return Ok(Some(t));
            }
        }
        return if stream.budget_exhausted() {
            Err(BudgetSpent)
        } else {
            Ok(None)
        };
    }
    let firsts = PrecoloringStream::new(g, k, order).first_b_vertex_candidates();
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<Option<T>, BudgetSpent>> = in_pool(jobs, || {
        firsts
            .par_iter()
            .enumerate()
            .map(|(idx, &x1)| {
                let mut stream = PrecoloringStream::new(g, k, order)
                    .with_first_b_vertex(x1)
                    .with_meter(meter);
                for p in stream.by_ref() {
                    if best.load(Ordering::Relaxed) < idx {
                        // a lower split already answered
                        return Ok(None);
                    }
                    if let ControlFlow::Break(t) = f(&p) {
                        best.fetch_min(idx, Ordering::Relaxed);
                        return Ok(Some(t));
                    }
                }
                if stream.budget_exhausted() {
                    Err(BudgetSpent)
                } else {
                    Ok(None)
                }
            })
            .collect()
    });
    for r in results {
        match r {
            Ok(Some(t)) => return Ok(Some(t)),
            Ok(None) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetSpent;

fn in_pool<R: Send>(jobs: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

/// `n^k * delta^(k(k-1)) * ((k-1)!)^k`, an upper bound on the number of
/// minimal b-precolorings with `k` colors.
pub fn beta_bound(n: u64, delta: u64, k: u64) -> BigUint {
    if k == 0 {
        return BigUint::from(1u32);
    }
    let n = BigUint::from(n);
    let delta = BigUint::from(delta);
    let fact: BigUint = (1..k).map(BigUint::from).product();
    let k32 = u32::try_from(k).expect("k fits in u32");
    n.pow(k32) * delta.pow(k32 * (k32 - 1)) * fact.pow(k32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_minimal_b_precoloring;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn pc(k: usize, pairs: &[(Vertex, Color)]) -> Precoloring {
        Precoloring::from_pairs(k, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn p3_two_colors() {
        let got: Vec<_> = enumerate_minimal_b_precolorings(&path(3), 2).collect();
        let mut expected = vec![
            pc(2, &[(0, 1), (1, 2)]),
            pc(2, &[(0, 2), (1, 1)]),
            pc(2, &[(1, 1), (2, 2)]),
            pc(2, &[(1, 2), (2, 1)]),
        ];
        let mut sorted = got.clone();
        sorted.sort();
        expected.sort();
        assert_eq!(sorted, expected);
        // first guess is x_1 = 0
        assert_eq!(got[0], pc(2, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn one_color_gives_singletons() {
        let g = path(4);
        let got: Vec<_> = enumerate_minimal_b_precolorings(&g, 1).collect();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn too_many_colors_is_empty() {
        assert_eq!(enumerate_minimal_b_precolorings(&Graph::complete(4), 5).count(), 0);
    }

    #[test]
    fn increasing_order_covers_every_class() {
        let k4 = Graph::complete(4);
        let all: Vec<_> = enumerate_minimal_b_precolorings(&k4, 4).collect();
        assert_eq!(all.len(), 24);
        let canon: Vec<_> = PrecoloringStream::new(&k4, 4, TupleOrder::Increasing).collect();
        assert_eq!(canon, vec![pc(4, &[(0, 1), (1, 2), (2, 3), (3, 4)])]);
    }

    #[test]
    fn every_output_is_minimal_and_unique() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        for k in 1..=3 {
            let got: Vec<_> = enumerate_minimal_b_precolorings(&g, k).collect();
            let unique: HashSet<_> = got.iter().cloned().collect();
            assert_eq!(unique.len(), got.len());
            assert!(got.iter().all(|p| is_minimal_b_precoloring(&g, p)));
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 2)]).unwrap();
        for order in [TupleOrder::Ordered, TupleOrder::Increasing] {
            let seq: Vec<_> = PrecoloringStream::new(&g, 3, order).collect();
            assert_eq!(enumerate_parallel(&g, 3, order, 4), seq);
        }
    }

    #[test]
    fn meter_stops_stream() {
        let g = Graph::complete(6);
        let meter = Meter::new(crate::budget::Budget::nodes(10));
        let mut s = PrecoloringStream::new(&g, 4, TupleOrder::Ordered).with_meter(&meter);
        while s.next().is_some() {}
        assert!(s.budget_exhausted());
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_bound(3, 2, 2), BigUint::from(36u32));
        assert_eq!(beta_bound(7, 4, 1), BigUint::from(7u32));
        assert_eq!(beta_bound(4, 3, 3), BigUint::from(373_248u32));
    }
}
