use std::collections::BTreeSet;

use super::{DirectedGraph, GraphError, NonnegIntMatrix};

/// Increasing chain `S_0 ⊆ S_1 ⊆ … ⊆ S_n = H` produced by saturating a vertex set.
///
/// `S_{k+1} = S_k ∪ {v : s(vE^1) ⊆ S_k}`; the chain is recorded until the
/// first repetition, so consecutive levels are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationChain {
    levels: Vec<BTreeSet<usize>>,
}

impl SaturationChain {
    /// Saturation of the set of sources.
    pub fn of_sources(graph: &DirectedGraph) -> Self {
        Self::from_seed(graph, graph.sources())
    }

    /// Saturation of an arbitrary seed set.
    pub fn from_seed(graph: &DirectedGraph, seed: BTreeSet<usize>) -> Self {
        let mut levels = vec![seed];
        // At most |E^0| strict increases.
        for _ in 0..=graph.vertex_count() {
            let current = levels.last().unwrap();
            let mut next = current.clone();
            for v in 0..graph.vertex_count() {
                if current.contains(&v) {
                    continue;
                }
                let fed_by_current = graph
                    .received(v)
                    .iter()
                    .all(|&e| current.contains(&graph.edge(e).source));
                if fed_by_current {
                    next.insert(v);
                }
            }
            if &next == current {
                break;
            }
            levels.push(next);
        }
        Self { levels }
    }

    pub fn levels(&self) -> &[BTreeSet<usize>] {
        &self.levels
    }

    /// The saturated set `H`.
    pub fn hull(&self) -> &BTreeSet<usize> {
        self.levels.last().expect("chain has at least the seed level")
    }

    /// `E^0 ∖ H` in canonical order.
    pub fn complement(&self, graph: &DirectedGraph) -> BTreeSet<usize> {
        (0..graph.vertex_count())
            .filter(|v| !self.hull().contains(v))
            .collect()
    }

    /// Block decomposition of the vertex matrix adapted to this chain.
    ///
    /// Vertices are ordered `E^0 ∖ H` first, then `H ∖ S_{n−1}`, then
    /// `S_{n−1} ∖ S_{n−2}`, …, finishing with `S_0`, each level in canonical
    /// order. The reordered matrix is `[[A_{E∖H}, B], [0, A_H]]` with `A_H`
    /// strictly upper triangular; both facts are checked.
    pub fn block_decomposition(&self, graph: &DirectedGraph) -> Result<BlockDecomposition, GraphError> {
        let mut ordering: Vec<usize> = self.complement(graph).into_iter().collect();
        let outside = ordering.len();
        for k in (0..self.levels.len()).rev() {
            let below = if k == 0 { None } else { Some(&self.levels[k - 1]) };
            for &v in &self.levels[k] {
                if below.is_none_or(|b| !b.contains(&v)) {
                    ordering.push(v);
                }
            }
        }
        debug_assert_eq!(ordering.len(), graph.vertex_count());

        let a = graph.vertex_matrix();
        let permuted = a.permuted(&ordering);
        let (top, bottom) = ordering.split_at(outside);
        let decomposition = BlockDecomposition {
            outer_block: a.select(top, top),
            coupling: a.select(top, bottom),
            hull_block: a.select(bottom, bottom),
            lower_left: a.select(bottom, top),
            ordering,
            outside,
            permuted,
        };

        if !decomposition.lower_left.is_zero() {
            return Err(GraphError::BlockStructure(
                "lower-left block of the reordered vertex matrix is nonzero".into(),
            ));
        }
        let h = decomposition.hull_block.rows();
        for i in 0..h {
            for j in 0..=i {
                if decomposition.hull_block.get(i, j) != 0 {
                    return Err(GraphError::BlockStructure(format!(
                        "A_H is not strictly upper triangular at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(decomposition)
    }
}

/// `A` reordered as `[[A_{E∖H}, B], [0, A_H]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Old vertex indices listed in block order.
    pub ordering: Vec<usize>,
    /// `|E^0 ∖ H|`; the first `outside` entries of `ordering`.
    pub outside: usize,
    pub permuted: NonnegIntMatrix,
    /// `A_{E∖H}`.
    pub outer_block: NonnegIntMatrix,
    /// `B`, rows in `E^0 ∖ H`, columns in `H`.
    pub coupling: NonnegIntMatrix,
    /// `A_H`.
    pub hull_block: NonnegIntMatrix,
    lower_left: NonnegIntMatrix,
}

impl BlockDecomposition {
    /// Block shapes `[(rows, cols)]` of `A_{E∖H}`, `B` and `A_H`.
    pub fn shapes(&self) -> [(usize, usize); 3] {
        [
            (self.outer_block.rows(), self.outer_block.cols()),
            (self.coupling.rows(), self.coupling.cols()),
            (self.hull_block.rows(), self.hull_block.cols()),
        ]
    }
}
