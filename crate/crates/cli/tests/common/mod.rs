#![allow(dead_code)]

use std::path::{Path as FsPath, PathBuf};
use std::process::{Command, Output};

use kmsgraph::spectral::critical_rho;
use kmsgraph::DirectedGraph;
use rand::Rng;
use serde_json::{json, Value};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kmsgraph"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

pub fn graph_document(graph: &DirectedGraph) -> Value {
    let vertices: Vec<String> = graph.vertices().iter().map(ToString::to_string).collect();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|e| json!({"id": e.id, "range": vertices[e.range], "source": vertices[e.source]}))
        .collect();
    json!({"vertices": vertices, "edges": edges})
}

pub fn write_graph(dir: &FsPath, name: &str, graph: &DirectedGraph) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, graph_document(graph).to_string()).expect("write graph");
    path
}

pub fn loops(n: usize) -> DirectedGraph {
    DirectedGraph::from_index_pairs(1, &vec![(0, 0); n]).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DirectedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let pairs: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    DirectedGraph::from_index_pairs(n, &pairs).unwrap()
}

/// A random admissible `q`: a fraction in `[lo, hi]` of `1/ρ(A)`, or of 1
/// when the graph is acyclic.
pub fn random_q<R: Rng>(rng: &mut R, graph: &DirectedGraph, lo: f64, hi: f64) -> f64 {
    let fraction = rng.gen_range(lo..hi);
    let rho = critical_rho(graph).unwrap();
    if rho == 0.0 {
        fraction
    } else {
        fraction / rho
    }
}

/// A nonnegative, nonzero direction; some entries are forced to zero.
pub fn random_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..n)
            .map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..1.0) })
            .collect();
        if d.iter().any(|&x| x > 0.0) {
            return d;
        }
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
