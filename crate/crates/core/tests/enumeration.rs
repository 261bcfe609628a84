mod common;

use std::collections::BTreeSet;

use bcolor::{
    beta_bound, brute_enumerate_minimal_b_precolorings, enumerate_minimal_b_precolorings, is_minimal_b_precoloring,
    Graph, PrecoloringStream, TupleOrder,
};
use common::{all_graphs, arb_graph};
use num_bigint::BigUint;
use proptest::prelude::*;

fn check_against_brute_force(g: &Graph, k: usize) {
    let stream: Vec<_> = enumerate_minimal_b_precolorings(g, k).collect();
    let as_set: BTreeSet<_> = stream.iter().cloned().collect();
    assert_eq!(as_set.len(), stream.len(), "duplicate output");
    let brute = brute_enumerate_minimal_b_precolorings(g, k).unwrap();
    assert_eq!(as_set, brute, "k = {k}, graph {g:?}");
    let bound = beta_bound(g.n() as u64, g.max_degree() as u64, k as u64);
    assert!(BigUint::from(stream.len()) <= bound);
}

#[test]
fn matches_brute_force_on_all_graphs_up_to_five_vertices() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for k in 1..=3 {
                check_against_brute_force(&g, k);
            }
        }
    }
}

#[test]
fn increasing_tuples_are_a_subset() {
    for g in all_graphs(4) {
        for k in 1..=4 {
            let all: BTreeSet<_> = enumerate_minimal_b_precolorings(&g, k).collect();
            for p in PrecoloringStream::new(&g, k, TupleOrder::Increasing) {
                assert!(all.contains(&p));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn six_vertex_graphs_match_brute_force(g in arb_graph(6), k in 1usize..=3) {
        check_against_brute_force(&g, k);
    }

    #[test]
    fn outputs_are_minimal(g in arb_graph(8), k in 1usize..=4) {
        for p in enumerate_minimal_b_precolorings(&g, k).take(200) {
            prop_assert!(is_minimal_b_precoloring(&g, &p));
            prop_assert_eq!(p.len(), p.domain().count());
        }
    }
}
