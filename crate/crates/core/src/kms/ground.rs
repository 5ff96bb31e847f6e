//! Ground (KMS_∞) states.

use crate::graph::DirectedGraph;
use crate::scalar::Scalar;

use super::simplex::vanishes_off_sources;
use super::{check_len, check_probability, KmsError, KmsState, StateKind, VertexVector};

/// The ground state `φ_ε` for a probability vector `ε`: `φ(p_v) = ε_v` and
/// `φ(s_μ s_ν*) = 0` whenever `|μ| > 0` or `|ν| > 0`.
///
/// It factors through `C*(E)` iff `φ(p_v − Σ_{e ∈ vE^1} s_e s_e*) = ε_v`
/// vanishes at every vertex that is not a source.
pub fn ground_state<T: Scalar>(
    graph: &DirectedGraph,
    epsilon: &[T],
    tolerance: f64,
) -> Result<KmsState<T>, KmsError> {
    check_len(epsilon, graph.vertex_count())?;
    check_probability(epsilon, tolerance, "Σε")?;
    Ok(KmsState {
        q: T::zero(),
        m: VertexVector(epsilon.to_vec()),
        epsilon: VertexVector(epsilon.to_vec()),
        kind: StateKind::Ground,
        factors_through_ck: vanishes_off_sources(graph, epsilon),
    })
}
