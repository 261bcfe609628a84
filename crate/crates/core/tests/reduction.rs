mod common;

use bcolor::exact::solve_exact_with;
use bcolor::fpt::{kernel_bound_ell, kernel_bound_m, kernelize, KernelMode, KernelResult};
use bcolor::{apply_reduction_rule, ell_k, partition_dtr, ExactMode, Graph, SolveOptions};
use common::arb_graph;
use proptest::prelude::*;

fn oracle(g: &Graph, k: usize) -> bool {
    let opts = SolveOptions {
        exact_mode: ExactMode::Direct,
        ..SolveOptions::default()
    };
    solve_exact_with(g, k, &opts).unwrap().is_yes()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rule_preserves_answers(g in arb_graph(9), k in 2usize..=6) {
        let red = apply_reduction_rule(&g, k);
        prop_assert_eq!(oracle(&g, k), red.graph.n() > 0 && oracle(&red.graph, k));
        prop_assert_eq!(red.kept.len() + red.removed.len(), g.n());
    }

    #[test]
    fn low_vertices_touch_high_ones(g in arb_graph(10), k in 2usize..=6) {
        let h = apply_reduction_rule(&g, k).graph;
        let parts = partition_dtr(&h, k);
        for v in parts.r_set {
            prop_assert!(h.neighbors(v).iter().any(|&w| h.degree(w) + 1 >= k));
        }
    }

    #[test]
    fn kernels_are_equivalent_and_bounded(g in arb_graph(9), k in 1usize..=5) {
        let truth = oracle(&g, k);
        let modes: &[KernelMode] = if ell_k(&g, k) <= k { &[KernelMode::M, KernelMode::Ell] } else { &[KernelMode::Ell] };
        for &mode in modes {
            match kernelize(&g, k, mode).unwrap() {
                KernelResult::Solved(out) => prop_assert_eq!(out.is_yes(), truth),
                KernelResult::Reduced { graph, k: kk, size_bound } => {
                    prop_assert_eq!(kk, k);
                    prop_assert!(graph.n() as u128 <= size_bound);
                    prop_assert_eq!(graph.n() > 0 && oracle(&graph, k), truth);
                }
            }
        }
    }
}

#[test]
fn bound_formulas() {
    assert_eq!(kernel_bound_m(2, 1), 4 + 4 * 4);
    assert_eq!(kernel_bound_ell(0, 2, 1), 2 + 2 * 2);
}
