#![allow(dead_code)]

use kmsgraph::spectral::critical_rho;
use kmsgraph::DirectedGraph;
use proptest::prelude::*;
use rand::Rng;

/// Graphs on `1..=max_vertices` vertices with at most `max_edges` edges,
/// loops and parallel edges allowed.
pub fn graph_strategy(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = DirectedGraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges)
            .prop_map(move |pairs| DirectedGraph::from_index_pairs(n, &pairs).unwrap())
    })
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DirectedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let pairs: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    DirectedGraph::from_index_pairs(n, &pairs).unwrap()
}

/// `q = fraction / ρ(A)`, or `fraction` itself when `ρ(A) = 0`.
pub fn q_at(graph: &DirectedGraph, fraction: f64) -> f64 {
    let rho = critical_rho(graph).unwrap();
    if rho == 0.0 {
        fraction
    } else {
        fraction / rho
    }
}

/// Every graph on `n` vertices with at most `max_edges` edges, up to the
/// order of parallel edges.
pub fn all_graphs(n: usize, max_edges: usize) -> Vec<DirectedGraph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        n: usize,
        slots: &[(usize, usize)],
        start: usize,
        left: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<DirectedGraph>,
    ) {
        out.push(DirectedGraph::from_index_pairs(n, current).unwrap());
        if left == 0 {
            return;
        }
        for i in start..slots.len() {
            current.push(slots[i]);
            rec(n, slots, i, left - 1, current, out);
            current.pop();
        }
    }
    rec(n, &slots, 0, max_edges, &mut current, &mut out);
    out
}

/// Small graphs covering the structural cases.
pub fn corpus() -> Vec<(&'static str, DirectedGraph)> {
    let g = |n, pairs: &[(usize, usize)]| DirectedGraph::from_index_pairs(n, pairs).unwrap();
    vec![
        ("single_loop", g(1, &[(0, 0)])),
        ("two_loops", g(1, &[(0, 0), (0, 0)])),
        ("edgeless", g(1, &[])),
        ("two_isolated", g(2, &[])),
        ("edge", g(2, &[(0, 1)])),
        ("two_cycle", g(2, &[(1, 0), (0, 1)])),
        ("golden_mean", g(2, &[(0, 0), (0, 1), (1, 0)])),
        ("loop_fed_by_source", g(2, &[(0, 0), (0, 1)])),
        ("chain", g(3, &[(1, 2), (0, 1)])),
        ("triangle_with_chord", g(3, &[(1, 0), (2, 1), (0, 2), (2, 0)])),
        ("cycle_with_tail", g(3, &[(0, 1), (1, 0), (1, 2)])),
        ("two_loops_joined", g(2, &[(0, 0), (1, 1), (1, 0)])),
    ]
}
