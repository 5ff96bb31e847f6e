//! States at the critical inverse temperature `β = ln ρ(A)`.

use crate::graph::DirectedGraph;
use crate::scalar::{tol, RealScalar, Scalar};
use crate::spectral::{check_subinvariant, classify_graph_spectrum, critical_rho, perron_vector, SpectralClass};

use super::simplex::{epsilon_from_measure, vanishes_off_sources};
use super::{check_len, check_probability, KmsError, KmsState, StateKind, VertexVector};

/// `1/ρ`, exact when the structural classification pins `ρ = 1`.
fn critical_q<T: Scalar>(class: SpectralClass, rho: T) -> T {
    if class == SpectralClass::One {
        T::one()
    } else {
        T::one() / rho
    }
}

/// The unique KMS state of `TC*(E)` at `β = ln ρ(A)` for strongly connected
/// `E`: `q = 1/ρ(A)` and `m` the unimodular Perron–Frobenius eigenvector.
pub fn critical_state_irreducible<T: RealScalar>(graph: &DirectedGraph) -> Result<KmsState<T>, KmsError> {
    if !graph.strongly_connected() {
        return Err(KmsError::NotStronglyConnected);
    }
    let perron = perron_vector::<T>(&graph.vertex_matrix())?;
    let q = critical_q(classify_graph_spectrum(graph), perron.rho);
    build(graph, q, perron.x, StateKind::Critical)
}

/// The unique KMS state of `C*(E)` at `β = ln ρ(A)` when `E` has no sinks and
/// `E∖H` is strongly connected, `H` being the saturation of the sources.
/// `m` is the Perron vector of `A_{E∖H}` on `E∖H` and zero on `H`.
pub fn critical_state_with_sources<T: RealScalar>(graph: &DirectedGraph) -> Result<KmsState<T>, KmsError> {
    if !graph.sinks().is_empty() {
        return Err(KmsError::HasSinks);
    }
    let chain = graph.source_saturation();
    // asserts the block structure that the construction relies on
    chain.block_decomposition(graph)?;
    let outside = chain.complement(graph);
    if outside.is_empty() {
        return Err(KmsError::ComplementNotStronglyConnected);
    }
    let sub = graph.induced_subgraph(&outside)?;
    if !sub.strongly_connected() {
        return Err(KmsError::ComplementNotStronglyConnected);
    }
    let perron = perron_vector::<T>(&sub.vertex_matrix())?;
    let q = critical_q(classify_graph_spectrum(&sub), perron.rho);
    let mut m = vec![T::zero(); graph.vertex_count()];
    for (x, &v) in perron.x.into_iter().zip(&outside) {
        m[v] = x;
    }
    build(graph, q, m, StateKind::CuntzKrieger)
}

/// A critical state from a subinvariant probability measure `m`
/// (`Am ≤ ρ(A)m`). Acyclic graphs are rejected since their critical
/// inverse temperature is `−∞`.
pub fn critical_state_from_measure<T: Scalar>(
    graph: &DirectedGraph,
    m: &[T],
) -> Result<KmsState<T>, KmsError> {
    check_len(m, graph.vertex_count())?;
    check_probability(m, tol::NORMALIZATION, "Σm")?;
    let class = classify_graph_spectrum(graph);
    if class == SpectralClass::Zero {
        return Err(KmsError::Acyclic);
    }
    let rho = critical_rho(graph)?;
    let q = critical_q(class, T::from_f64(rho).expect("ρ(A) is finite"));
    let check = check_subinvariant(&graph.vertex_matrix(), m, &q, tol::SUBINVARIANCE);
    if !check.ok {
        let (vertex, slack) = check
            .slack
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("slack is comparable"))
            .expect("graph has vertices");
        return Err(KmsError::NotSubinvariant {
            vertex,
            slack: slack.to_f64_lossy(),
        });
    }
    build(graph, q, m.to_vec(), StateKind::Critical)
}

fn build<T: Scalar>(graph: &DirectedGraph, q: T, m: Vec<T>, kind: StateKind) -> Result<KmsState<T>, KmsError> {
    let epsilon = epsilon_from_measure(graph, &q, &m)?;
    let factors_through_ck = vanishes_off_sources(graph, &epsilon);
    Ok(KmsState {
        q,
        m: VertexVector(m),
        epsilon,
        kind,
        factors_through_ck,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Path;
    use crate::algebra::SpanningElement;
    use num_rational::BigRational;

    fn loops(n: usize) -> DirectedGraph {
        DirectedGraph::from_index_pairs(1, &vec![(0, 0); n]).unwrap()
    }

    #[test]
    fn irreducible_examples() {
        let s = critical_state_irreducible::<f64>(&loops(2)).unwrap();
        assert!((s.q - 0.5).abs() < 1e-15);
        assert_eq!(s.m.0, vec![1.0]);
        let e = Path::edge(&loops(2), 0);
        assert!((s.value(&SpanningElement::range_projection(e)) - 0.5).abs() < 1e-15);
        assert!(s.factors_through_ck);

        let two_cycle = DirectedGraph::from_index_pairs(2, &[(1, 0), (0, 1)]).unwrap();
        let s = critical_state_irreducible::<f64>(&two_cycle).unwrap();
        assert_eq!(s.q, 1.0);
        assert!((s.m[0] - 0.5).abs() < 1e-12 && (s.m[1] - 0.5).abs() < 1e-12);
        assert_eq!(s.beta(), 0.0);

        let s = critical_state_irreducible::<f64>(&loops(1)).unwrap();
        assert_eq!((s.q, s.m.0.clone()), (1.0, vec![1.0]));

        let edge = DirectedGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(
            critical_state_irreducible::<f64>(&edge).unwrap_err(),
            KmsError::NotStronglyConnected
        );
    }

    #[test]
    fn sourced_examples() {
        // v = 0 with loops, w = 1 a source with an edge into v
        let g = DirectedGraph::from_index_pairs(2, &[(0, 0), (0, 1)]).unwrap();
        let s = critical_state_with_sources::<f64>(&g).unwrap();
        assert_eq!(s.q, 1.0);
        assert_eq!(s.m.0, vec![1.0, 0.0]);
        assert_eq!(s.kind, StateKind::CuntzKrieger);
        assert!(s.factors_through_ck);

        let g = DirectedGraph::from_index_pairs(2, &[(0, 0), (0, 0), (0, 1)]).unwrap();
        let s = critical_state_with_sources::<f64>(&g).unwrap();
        assert!((s.q - 0.5).abs() < 1e-15);
        assert_eq!(s.m.0, vec![1.0, 0.0]);

        let no_sources = critical_state_with_sources::<f64>(&loops(3)).unwrap();
        let direct = critical_state_irreducible::<f64>(&loops(3)).unwrap();
        assert_eq!((no_sources.q, no_sources.m), (direct.q, direct.m));

        let sink = DirectedGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(critical_state_with_sources::<f64>(&sink).unwrap_err(), KmsError::HasSinks);

        // two separate loops: no sources, but E∖H is not strongly connected
        let split = DirectedGraph::from_index_pairs(2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(
            critical_state_with_sources::<f64>(&split).unwrap_err(),
            KmsError::ComplementNotStronglyConnected
        );
    }

    #[test]
    fn from_measure_examples() {
        let g = DirectedGraph::from_index_pairs(2, &[(0, 0), (0, 1)]).unwrap();
        let s = critical_state_from_measure(&g, &[1.0, 0.0]).unwrap();
        assert_eq!(s.q, 1.0);
        assert_eq!(s.epsilon.0, vec![0.0, 0.0]);

        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let s = critical_state_from_measure(&loops(1), &[r(1, 1)]).unwrap();
        assert_eq!(s.q, r(1, 1));
        assert_eq!(s.epsilon.0, vec![r(0, 1)]);

        let o2 = loops(2);
        let perron = critical_state_irreducible::<f64>(&o2).unwrap();
        let s = critical_state_from_measure(&o2, &perron.m).unwrap();
        assert_eq!((s.q, s.m), (perron.q, perron.m));

        // m = (0, 1) puts mass on the source w but not on v: qAm = (1, 0) ≰ m
        assert!(matches!(
            critical_state_from_measure(&g, &[0.0, 1.0]),
            Err(KmsError::NotSubinvariant { vertex: 0, .. })
        ));
        let acyclic = DirectedGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(critical_state_from_measure(&acyclic, &[0.5, 0.5]).unwrap_err(), KmsError::Acyclic);
        assert!(matches!(
            critical_state_from_measure(&g, &[0.5, 0.6]),
            Err(KmsError::NotNormalized { .. })
        ));
    }
}
