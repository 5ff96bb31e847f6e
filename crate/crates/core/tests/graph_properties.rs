mod common;

use std::collections::BTreeSet;

use kmsgraph::graph::SaturationChain;
use kmsgraph::{DirectedGraph, NonnegIntMatrix};
use proptest::prelude::*;

/// Brute-force reachability through matrix powers `A, A², …, A^n`.
fn strongly_connected_by_powers(graph: &DirectedGraph) -> bool {
    let a = graph.vertex_matrix();
    let n = graph.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    let mut power = NonnegIntMatrix::identity(n);
    for _ in 0..n {
        power = power.mul(&a);
        for (v, row) in reach.iter_mut().enumerate() {
            for (w, r) in row.iter_mut().enumerate() {
                *r |= power.get(v, w) > 0;
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&r| r))
}

#[test]
fn strong_connectivity_matches_matrix_powers_exhaustively() {
    for n in 1..=4 {
        for g in common::all_graphs(n, 6) {
            assert_eq!(g.strongly_connected(), strongly_connected_by_powers(&g), "{g:?}");
        }
    }
}

proptest! {
    #[test]
    fn path_counts_match_matrix_powers(g in common::graph_strategy(4, 6), n in 0usize..=6) {
        let power = g.vertex_matrix().pow(n as u32);
        let mut counts = vec![vec![0u64; g.vertex_count()]; g.vertex_count()];
        for p in g.enumerate_paths(n, None) {
            prop_assert_eq!(p.len(), n);
            counts[p.range()][p.source()] += 1;
        }
        prop_assert_eq!(counts, power.to_rows());
    }

    #[test]
    fn restricted_enumeration_filters_by_source(g in common::graph_strategy(4, 6), n in 0usize..=4) {
        for v in 0..g.vertex_count() {
            let at = g.enumerate_paths(n, Some(v));
            let all: Vec<_> = g.enumerate_paths(n, None).into_iter().filter(|p| p.source() == v).collect();
            prop_assert_eq!(at, all);
        }
    }

    #[test]
    fn saturation_is_saturated_and_a_fixed_point(g in common::graph_strategy(4, 6)) {
        let chain = g.source_saturation();
        let h = chain.hull().clone();
        for v in 0..g.vertex_count() {
            let fed = g.received(v).iter().all(|&e| h.contains(&g.edge(e).source));
            prop_assert!(!fed || h.contains(&v));
        }
        let again = SaturationChain::from_seed(&g, h.clone());
        prop_assert_eq!(again.hull(), &h);
        prop_assert!(chain.levels().len() <= g.vertex_count() + 1);
        for w in chain.levels().windows(2) {
            prop_assert!(w[0].is_subset(&w[1]) && w[0] != w[1]);
        }
    }

    #[test]
    fn block_decomposition_shape(g in common::graph_strategy(4, 6)) {
        let chain = g.source_saturation();
        let d = chain.block_decomposition(&g).unwrap();
        let k = d.outside;
        let n = g.vertex_count();
        for i in k..n {
            for j in 0..k {
                prop_assert_eq!(d.permuted.get(i, j), 0);
            }
            for j in k..=i {
                prop_assert_eq!(d.permuted.get(i, j), 0);
            }
        }
        let outside: BTreeSet<usize> = d.ordering[..k].iter().copied().collect();
        prop_assert_eq!(outside, chain.complement(&g));
    }
}
