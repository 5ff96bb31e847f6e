use std::fmt::Write as _;

use super::{DirectedGraph, GraphError};

/// A finite path `μ = μ_1 μ_2 … μ_n` with `s(μ_i) = r(μ_{i+1})`.
///
/// A path of length zero is a vertex; for it `range == source`.
/// Edges are stored as indices into the owning graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<usize>,
    range: usize,
    source: usize,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Self {
            edges: Vec::new(),
            range: v,
            source: v,
        }
    }

    pub fn edge(graph: &DirectedGraph, e: usize) -> Self {
        let edge = graph.edge(e);
        Self {
            edges: vec![e],
            range: edge.range,
            source: edge.source,
        }
    }

    /// Builds a path from edges listed from the range end.
    pub fn from_edges(graph: &DirectedGraph, edges: &[usize]) -> Result<Self, GraphError> {
        let Some((&first, rest)) = edges.split_first() else {
            return Err(GraphError::Malformed(
                "a path needs at least one edge; use Path::vertex for length zero".into(),
            ));
        };
        let mut path = Self::edge(graph, first);
        for &e in rest {
            let edge = graph.edge(e);
            if path.source != edge.range {
                let prev = graph.edge(*path.edges.last().unwrap()).id.clone();
                return Err(GraphError::NotComposable(prev, edge.id.clone()));
            }
            path.edges.push(e);
            path.source = edge.source;
        }
        Ok(path)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// `r(μ)`.
    pub fn range(&self) -> usize {
        self.range
    }

    /// `s(μ)`.
    pub fn source(&self) -> usize {
        self.source
    }

    /// `eμ`, assuming `s(e) = r(μ)`.
    pub(crate) fn prepend_edge(&self, graph: &DirectedGraph, e: usize) -> Self {
        debug_assert_eq!(graph.edge(e).source, self.range);
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        Self {
            edges,
            range: graph.edge(e).range,
            source: self.source,
        }
    }

    /// The composite `μν`, defined when `s(μ) = r(ν)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.source != other.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            edges,
            range: self.range,
            source: other.source,
        })
    }

    /// Returns `λ′` with `self = prefix · λ′`, if such a factorization exists.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.range != self.range || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        let rest = &self.edges[prefix.edges.len()..];
        Some(Path {
            edges: rest.to_vec(),
            range: prefix.source,
            source: self.source,
        })
    }

    /// Human-readable form: edge ids joined by `.`, or the vertex id.
    pub fn display(&self, graph: &DirectedGraph) -> String {
        if self.edges.is_empty() {
            return graph.vertex(self.range).to_string();
        }
        let mut s = String::new();
        for (i, &e) in self.edges.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            let _ = write!(s, "{}", graph.edge(e).id);
        }
        s
    }
}

/// Extension test for the product formula: `λ = μλ′`.
pub fn factorize_path(lambda: &Path, mu: &Path) -> Option<Path> {
    lambda.strip_prefix(mu)
}
