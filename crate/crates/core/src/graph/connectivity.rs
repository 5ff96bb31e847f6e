use std::collections::VecDeque;

use super::DirectedGraph;

/// `reach[w][v]` is true iff some path of length at least one has source `w`
/// and range `v`.
pub fn reachability(graph: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = graph.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let row = &mut reach[start];
        let mut queue = VecDeque::new();
        for &e in graph.emitted(start) {
            let r = graph.edge(e).range;
            if !row[r] {
                row[r] = true;
                queue.push_back(r);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in graph.emitted(u) {
                let r = graph.edge(e).range;
                if !row[r] {
                    row[r] = true;
                    queue.push_back(r);
                }
            }
        }
    }
    reach
}

/// True iff the graph contains a cycle (a loop counts).
pub fn has_cycle(graph: &DirectedGraph) -> bool {
    let reach = reachability(graph);
    (0..graph.vertex_count()).any(|v| reach[v][v])
}

/// Strongly connected components under mutual reachability (paths of length
/// zero allowed), each sorted, listed in order of their smallest vertex.
pub fn strongly_connected_components(graph: &DirectedGraph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let reach = reachability(graph);
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let comp: Vec<usize> = (v..n)
            .filter(|&w| w == v || (reach[v][w] && reach[w][v]))
            .collect();
        for &w in &comp {
            assigned[w] = true;
        }
        comps.push(comp);
    }
    comps
}
