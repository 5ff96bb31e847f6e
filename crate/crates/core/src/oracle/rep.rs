//! The path-space representation truncated to paths of length at most `N`.
//!
//! Every operator that occurs (`Q_v`, `T_e`, `T_e*` and their products) has
//! a 0/1 matrix with at most one nonzero entry in each row and column, so it
//! is stored as a partial map on basis indices rather than a dense matrix.

use std::collections::HashMap;

use crate::algebra::SpanningElement;
use crate::graph::{DirectedGraph, Path};

use super::OracleError;

const NONE: u32 = u32::MAX;

/// One generator of the represented algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// `Q_v`.
    Vertex(usize),
    /// `T_e`.
    Create(usize),
    /// `T_e*`.
    Annihilate(usize),
}

/// A product of generators, written left to right and applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Factor>);

impl Word {
    /// `T_μ T_ν*` as a product of generators; `T_v = Q_v` for a vertex.
    pub fn spanning(a: &SpanningElement) -> Option<Word> {
        let SpanningElement::Pair { mu, nu } = a else {
            return None;
        };
        let mut factors = Vec::with_capacity(mu.len() + nu.len() + 1);
        if mu.is_vertex() && nu.is_vertex() {
            factors.push(Factor::Vertex(mu.source()));
        }
        factors.extend(mu.edges().iter().map(|&e| Factor::Create(e)));
        factors.extend(nu.edges().iter().rev().map(|&e| Factor::Annihilate(e)));
        Some(Word(factors))
    }

    /// Operator product `self · other`.
    pub fn then(&self, other: &Word) -> Word {
        let mut factors = self.0.clone();
        factors.extend_from_slice(&other.0);
        Word(factors)
    }

    /// Largest length a basis path can gain while the word is applied to it.
    pub fn max_growth(&self) -> usize {
        let mut level = 0i64;
        let mut peak = 0i64;
        for f in self.0.iter().rev() {
            match f {
                Factor::Create(_) => level += 1,
                Factor::Annihilate(_) => level -= 1,
                Factor::Vertex(_) => {}
            }
            peak = peak.max(level);
        }
        peak as usize
    }
}

/// Partial map on basis indices: column `i` has its only nonzero entry in
/// row `map[i]`, or none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap(Vec<Option<usize>>);

impl PartialMap {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dense 0/1 matrix, row-major; for small bases only.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.0.len();
        let mut m = vec![vec![0u8; n]; n];
        for (col, row) in self.0.iter().enumerate() {
            if let Some(row) = row {
                m[*row][col] = 1;
            }
        }
        m
    }
}

/// `Q_v` and `T_e` on `ℓ²(E^{≤N})`, with `T_e h_μ = h_{eμ}` when
/// `s(e) = r(μ)` and `|μ| < N`, and `T_e h_μ = 0` otherwise.
#[derive(Debug, Clone)]
pub struct TruncatedRep {
    depth: usize,
    basis: Vec<Path>,
    ranges: Vec<usize>,
    create: Vec<Vec<u32>>,
    annihilate: Vec<Vec<u32>>,
}

/// `|E^{≤n}|` for each `n ≤ depth`, saturating.
pub(crate) fn basis_sizes(graph: &DirectedGraph, depth: usize) -> Vec<u64> {
    // paths of length n ending at each range vertex, grown one edge at a time
    let n = graph.vertex_count();
    let mut by_range: Vec<u64> = vec![1; n];
    let mut total = n as u64;
    let mut out = vec![total];
    for _ in 0..depth {
        let mut next = vec![0u64; n];
        for e in graph.edges() {
            next[e.range] = next[e.range].saturating_add(by_range[e.source]);
        }
        by_range = next;
        total = total.saturating_add(by_range.iter().fold(0u64, |a, &b| a.saturating_add(b)));
        out.push(total);
    }
    out
}

impl TruncatedRep {
    /// Fails if `|E^{≤N}|` exceeds `max_basis`.
    pub fn build(graph: &DirectedGraph, depth: usize, max_basis: usize) -> Result<Self, OracleError> {
        let needed = *basis_sizes(graph, depth).last().expect("nonempty");
        if needed > max_basis as u64 || needed >= NONE as u64 {
            return Err(OracleError::BasisCap {
                depth,
                needed,
                cap: max_basis,
            });
        }
        let basis = graph.paths_up_to(depth);
        let index: HashMap<&Path, u32> = basis.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let dim = basis.len();
        let mut create = vec![vec![NONE; dim]; graph.edge_count()];
        let mut annihilate = vec![vec![NONE; dim]; graph.edge_count()];
        for (i, mu) in basis.iter().enumerate() {
            if mu.len() >= depth {
                continue;
            }
            for (e, edge) in graph.edges().iter().enumerate() {
                if edge.source != mu.range() {
                    continue;
                }
                let image = Path::edge(graph, e).concat(mu).expect("s(e) = r(μ)");
                let j = index[&image];
                create[e][i] = j;
                annihilate[e][j as usize] = i as u32;
            }
        }
        let ranges = basis.iter().map(Path::range).collect();
        Ok(Self {
            depth,
            basis,
            ranges,
            create,
            annihilate,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis paths, shortest first.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    fn apply_factor(&self, f: Factor, i: usize) -> Option<usize> {
        let j = match f {
            Factor::Vertex(v) => return (self.ranges[i] == v).then_some(i),
            Factor::Create(e) => self.create[e][i],
            Factor::Annihilate(e) => self.annihilate[e][i],
        };
        (j != NONE).then_some(j as usize)
    }

    /// Image of `h_i` under the word, as a basis index or zero.
    pub fn apply(&self, word: &Word, i: usize) -> Option<usize> {
        word.0
            .iter()
            .rev()
            .try_fold(i, |k, &f| self.apply_factor(f, k))
    }

    pub fn materialize(&self, word: &Word) -> PartialMap {
        PartialMap((0..self.dim()).map(|i| self.apply(word, i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop_depth_two() {
        let g = DirectedGraph::from_index_pairs(1, &[(0, 0)]).unwrap();
        let rep = TruncatedRep::build(&g, 2, 100).unwrap();
        assert_eq!(rep.dim(), 3);
        let t = rep.materialize(&Word(vec![Factor::Create(0)]));
        // h_v -> h_e -> h_ee -> 0
        assert_eq!((t.get(0), t.get(1), t.get(2)), (Some(1), Some(2), None));
        assert_eq!(t.to_dense(), vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn edge_depth_one() {
        // v = 0, w = 1, e: w -> v
        let g = DirectedGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        let rep = TruncatedRep::build(&g, 1, 100).unwrap();
        assert_eq!(rep.dim(), 3);
        let t = rep.materialize(&Word(vec![Factor::Create(0)]));
        let w = rep.basis().iter().position(|p| *p == Path::vertex(1)).unwrap();
        let e = rep.basis().iter().position(|p| *p == Path::edge(&g, 0)).unwrap();
        assert_eq!(t.get(w), Some(e));
        assert_eq!(t.get(e), None);
    }

    #[test]
    fn two_loops_basis_size_and_cap() {
        let g = DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(TruncatedRep::build(&g, 3, 100).unwrap().dim(), 15);
        assert_eq!(basis_sizes(&g, 3), vec![1, 3, 7, 15]);
        assert!(matches!(
            TruncatedRep::build(&g, 4, 20),
            Err(OracleError::BasisCap { needed: 31, .. })
        ));
    }

    #[test]
    fn spanning_words() {
        let g = DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        let ef = Path::from_edges(&g, &[0, 1]).unwrap();
        let a = SpanningElement::new(ef, Path::edge(&g, 1)).unwrap();
        let w = Word::spanning(&a).unwrap();
        assert_eq!(w.0, vec![Factor::Create(0), Factor::Create(1), Factor::Annihilate(1)]);
        assert_eq!(w.max_growth(), 1);
        assert!(Word::spanning(&SpanningElement::Zero).is_none());
    }
}
