//! Finite directed graphs `E = (E^0, E^1, r, s)`.
//!
//! Conventions follow the range/source notation: an edge `e` points from
//! `s(e)` to `r(e)`, and `vE^1w` is the set of edges with range `v` and
//! source `w`. A **source** is a vertex that *receives* no edges
//! (`vE^1 = ∅`); a **sink** is a vertex that emits none. Note that this is
//! the opposite of the everyday meaning of "source".
//!
//! Vertices and edges are addressed internally by their index in declaration
//! order, which is also the canonical order of every vector and matrix the
//! crate produces.

mod connectivity;
mod matrix;
mod path;
mod saturation;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

pub use connectivity::{has_cycle, reachability, strongly_connected_components};
pub use matrix::NonnegIntMatrix;
pub use path::{factorize_path, Path};
pub use saturation::{BlockDecomposition, SaturationChain};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("graph has no vertices")]
    NoVertices,
    #[error("empty identifier")]
    EmptyId,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("dangling endpoint: edge {edge:?} refers to undeclared vertex {vertex:?}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edges do not compose into a path: s({0}) != r({1})")]
    NotComposable(String, String),
    #[error("block decomposition invariant violated: {0}")]
    BlockStructure(String),
}

/// Vertex identifier, a nonempty string token.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Result<Self, GraphError> {
        let id = id.into();
        if id.is_empty() {
            return Err(GraphError::EmptyId);
        }
        Ok(Self(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An edge with range `r(e)` and source `s(e)`, both vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub range: usize,
    pub source: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: Vec<String>,
    edges: Vec<EdgeDocument>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDocument {
    id: String,
    range: String,
    source: String,
}

/// A finite directed graph with a nonempty vertex set.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    /// `received[v]` lists the edges of `vE^1`.
    received: Vec<Vec<usize>>,
    /// `emitted[v]` lists the edges of `E^1v`.
    emitted: Vec<Vec<usize>>,
}

impl DirectedGraph {
    /// Builds a graph from vertex names and `(edge id, range, source)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut ids = Vec::new();
        let mut vertex_index = HashMap::new();
        for name in vertices {
            let id = VertexId::new(name)?;
            if vertex_index.insert(id.0.clone(), ids.len()).is_some() {
                return Err(GraphError::DuplicateVertex(id.0));
            }
            ids.push(id);
        }
        if ids.is_empty() {
            return Err(GraphError::NoVertices);
        }

        let mut resolved = Vec::new();
        let mut edge_index = HashMap::new();
        for (id, range, source) in edges {
            if id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            let lookup = |name: &str| {
                vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEndpoint {
                        edge: id.clone(),
                        vertex: name.to_string(),
                    })
            };
            let range = lookup(&range)?;
            let source = lookup(&source)?;
            if edge_index.insert(id.clone(), resolved.len()).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
            resolved.push(Edge { id, range, source });
        }
        Ok(Self::assemble(ids, resolved, vertex_index, edge_index))
    }

    /// Builds a graph on `n` vertices named `v0, v1, …` from `(range, source)`
    /// index pairs; edges are named `e0, e1, …`.
    pub fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::with_capacity(pairs.len());
        for (k, &(r, s)) in pairs.iter().enumerate() {
            let name = |i: usize| vertices.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
            edges.push((format!("e{k}"), name(r), name(s)));
        }
        Self::new(vertices.clone(), edges)
    }

    fn assemble(
        vertices: Vec<VertexId>,
        edges: Vec<Edge>,
        vertex_index: HashMap<String, usize>,
        edge_index: HashMap<String, usize>,
    ) -> Self {
        let n = vertices.len();
        let mut received = vec![Vec::new(); n];
        let mut emitted = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            received[e.range].push(k);
            emitted[e.source].push(k);
        }
        Self {
            vertices,
            edges,
            vertex_index,
            edge_index,
            received,
            emitted,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &VertexId {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    /// Edges received by `v`, i.e. `vE^1`.
    pub fn received(&self, v: usize) -> &[usize] {
        &self.received[v]
    }

    /// Edges emitted by `v`, i.e. `E^1v`.
    pub fn emitted(&self, v: usize) -> &[usize] {
        &self.emitted[v]
    }

    /// Vertex matrix `A(v, w) = |vE^1w|`.
    pub fn vertex_matrix(&self) -> NonnegIntMatrix {
        let n = self.vertex_count();
        let mut a = NonnegIntMatrix::zeros(n, n);
        for e in &self.edges {
            a.add_to(e.range, e.source, 1);
        }
        a
    }

    /// Saturation chain of the set of sources.
    pub fn source_saturation(&self) -> SaturationChain {
        SaturationChain::of_sources(self)
    }

    /// Vertices receiving no edges.
    pub fn sources(&self) -> BTreeSet<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.received[v].is_empty())
            .collect()
    }

    /// Vertices emitting no edges.
    pub fn sinks(&self) -> BTreeSet<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.emitted[v].is_empty())
            .collect()
    }

    /// True iff the vertex matrix is irreducible: every ordered pair of vertices
    /// is joined by a path of length at least one. A single vertex without a
    /// loop is therefore *not* strongly connected.
    pub fn strongly_connected(&self) -> bool {
        let reach = reachability(self);
        reach.iter().all(|row| row.iter().all(|&b| b))
    }

    /// The subgraph on `keep` with every edge whose endpoints both survive.
    /// Vertex names and canonical order are preserved.
    pub fn induced_subgraph(&self, keep: &BTreeSet<usize>) -> Result<Self, GraphError> {
        let vertices: Vec<String> = keep.iter().map(|&v| self.vertices[v].0.clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.range) && keep.contains(&e.source))
            .map(|e| {
                (
                    e.id.clone(),
                    self.vertices[e.range].0.clone(),
                    self.vertices[e.source].0.clone(),
                )
            });
        Self::new(vertices, edges)
    }

    /// Paths of length `n`, optionally restricted to those with `s(μ) = at`.
    ///
    /// Paths are produced in lexicographic order of their edge indices read
    /// from the range end.
    pub fn enumerate_paths(&self, n: usize, at: Option<usize>) -> Vec<Path> {
        let mut layer: Vec<Path> = match at {
            Some(v) => vec![Path::vertex(v)],
            None => (0..self.vertex_count()).map(Path::vertex).collect(),
        };
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                for &e in &self.emitted[p.range()] {
                    next.push(p.prepend_edge(self, e));
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    /// All paths of length at most `n`, shortest first, each length block
    /// in the order of [`DirectedGraph::enumerate_paths`].
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut layer: Vec<Path> = (0..self.vertex_count()).map(Path::vertex).collect();
        for len in 0..=n {
            layer.sort();
            out.extend(layer.iter().cloned());
            if len == n {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                for &e in &self.emitted[p.range()] {
                    next.push(p.prepend_edge(self, e));
                }
            }
            layer = next;
        }
        out
    }

    /// Parses a path written as edge ids separated by `.`, or a vertex id for
    /// a path of length zero. Edge ids take precedence over vertex ids.
    pub fn parse_path(&self, text: &str) -> Result<Path, GraphError> {
        if let Ok(e) = self.edge_by_name(text) {
            return Ok(Path::edge(self, e));
        }
        if let Ok(v) = self.vertex_by_name(text) {
            return Ok(Path::vertex(v));
        }
        let edges = text
            .split('.')
            .map(|t| self.edge_by_name(t))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(self, &edges)
    }
}

/// Parses and validates a graph document.
///
/// The document is JSON of the form
/// `{"vertices": [..], "edges": [{"id": .., "range": .., "source": ..}, ..]}`;
/// unknown keys are rejected.
pub fn parse_graph(document: &str) -> Result<DirectedGraph, GraphError> {
    let doc: GraphDocument =
        serde_json::from_str(document).map_err(|e| GraphError::Malformed(e.to_string()))?;
    DirectedGraph::new(
        doc.vertices,
        doc.edges.into_iter().map(|e| (e.id, e.range, e.source)),
    )
}
