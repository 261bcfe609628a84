mod common;

use bcolor::exact::solve_exact_with;
use bcolor::{
    b_chromatic_number, ell_k, m_degree, select_algorithm, solve_delta_ell, solve_exact, solve_k_eq_delta, solve_k_eq_m,
    solve_k_eq_m_minus_1, solve_m_param_delta, verify_certificate, Algorithm, ExactMode, Graph, SolveOptions,
    SolveOutcome,
};
use common::{all_graphs, arb_graph};
use proptest::prelude::*;

fn direct(g: &Graph, k: usize) -> bool {
    let opts = SolveOptions {
        exact_mode: ExactMode::Direct,
        ..SolveOptions::default()
    };
    solve_exact_with(g, k, &opts).unwrap().is_yes()
}

fn verified(g: &Graph, k: usize, out: &SolveOutcome) -> bool {
    if let Some(cert) = out.certificate() {
        assert!(verify_certificate(g, k, cert).passed());
    }
    out.is_yes()
}

/// Checks every applicable solver at `k` against the direct oracle.
fn check_all(g: &Graph, k: usize) {
    let truth = direct(g, k);
    let ctx = format!("k = {k}, graph {g:?}");
    assert_eq!(verified(g, k, &solve_exact(g, k).unwrap()), truth, "exact, {ctx}");
    assert_eq!(verified(g, k, &solve_delta_ell(g, k).unwrap()), truth, "fpt-ell, {ctx}");
    if ell_k(g, k) <= k {
        assert_eq!(verified(g, k, &solve_m_param_delta(g, k).unwrap()), truth, "fpt-delta, {ctx}");
    }
    let m = m_degree(g);
    if k == m {
        assert_eq!(verified(g, k, &solve_k_eq_m(g).unwrap()), truth, "m, {ctx}");
    }
    if k == g.max_degree() {
        assert_eq!(verified(g, k, &solve_k_eq_delta(g).unwrap()), truth, "delta, {ctx}");
    }
    if m >= 2 && k == m - 1 {
        assert_eq!(verified(g, k, &solve_k_eq_m_minus_1(g).unwrap()), truth, "m-minus-1, {ctx}");
    }
}

#[test]
fn every_solver_agrees_on_graphs_up_to_five_vertices() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for k in 1..=g.max_degree() + 2 {
                check_all(&g, k);
            }
        }
    }
}

#[test]
fn known_b_chromatic_numbers() {
    let cycle = |n: usize| Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
    let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    let p5 = Graph::from_edges(5, (1..5).map(|i| (i - 1, i))).unwrap();
    for n in 1..=6 {
        assert_eq!(b_chromatic_number(&Graph::complete(n)).unwrap().0, n);
    }
    assert_eq!(b_chromatic_number(&k33).unwrap().0, 2);
    assert_eq!(b_chromatic_number(&p5).unwrap().0, 3);
    assert_eq!(b_chromatic_number(&cycle(4)).unwrap().0, 2);
    assert_eq!(b_chromatic_number(&cycle(5)).unwrap().0, 3);
}

#[test]
fn auto_selection_picks_an_applicable_route() {
    for g in all_graphs(4) {
        for k in 1..=g.max_degree() + 2 {
            let algo = select_algorithm(&g, k);
            match algo {
                Algorithm::KEqM => assert_eq!(k, m_degree(&g)),
                Algorithm::KEqDelta => assert_eq!(k, g.max_degree()),
                Algorithm::KEqMMinus1 => assert_eq!(k + 1, m_degree(&g)),
                Algorithm::FptDelta => assert!(ell_k(&g, k) <= k || k == g.max_degree() + 1),
                Algorithm::FptEll | Algorithm::Exact => {}
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solvers_agree_on_random_graphs(g in arb_graph(9)) {
        for k in 1..=g.max_degree() + 2 {
            check_all(&g, k);
        }
    }

    #[test]
    fn b_chromatic_number_respects_upper_bounds(g in arb_graph(8)) {
        let (chi_b, out) = b_chromatic_number(&g).unwrap();
        prop_assert!(chi_b <= m_degree(&g));
        prop_assert!(chi_b <= g.max_degree() + 1);
        prop_assert!(verify_certificate(&g, chi_b, out.certificate().unwrap()).passed());
        prop_assert!(!solve_exact(&g, m_degree(&g) + 1).unwrap().is_yes());
    }
}
