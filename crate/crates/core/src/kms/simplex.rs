//! The simplex of KMS_β states above the critical inverse temperature.
//!
//! For `q·ρ(A) < 1` the resolvent `(I − qA)^{−1} = Σ q^n A^n` converges and
//! is entrywise nonnegative. The states are `φ_ε` for `ε ≥ 0` with `ε·y = 1`,
//! where `y^T = 1^T (I − qA)^{−1}`, and `m = (I − qA)^{−1} ε`.

use crate::graph::{DirectedGraph, NonnegIntMatrix};
use crate::linalg::{DenseMatrix, Lu};
use crate::scalar::{tol, Scalar};
use crate::spectral::critical_rho;

use super::{
    check_len, check_nonnegative, EpsilonVector, KmsError, KmsState, MeasureVector, StateKind,
    VertexVector, YVector,
};

/// Factored `I − qA` at an admissible `q`.
#[derive(Debug, Clone)]
pub struct Resolvent<T> {
    a: NonnegIntMatrix,
    q: T,
    rho: f64,
    lu: Lu<T>,
    lu_transpose: Lu<T>,
}

impl<T: Scalar> Resolvent<T> {
    /// Fails unless `q > 0` and `q·ρ(A) < 1 − 1e−9`.
    pub fn new(graph: &DirectedGraph, q: &T) -> Result<Self, KmsError> {
        let qf = q.to_f64_lossy();
        if *q <= T::zero() {
            return Err(KmsError::NonPositiveQ(qf));
        }
        let rho = critical_rho(graph)?;
        if qf * rho >= 1.0 - tol::ADMISSIBILITY_MARGIN {
            return Err(KmsError::Inadmissible {
                q: qf,
                rho,
                critical_beta: rho.ln(),
            });
        }
        let a = graph.vertex_matrix();
        let m = DenseMatrix::identity_minus_scaled(&a, q);
        let lu_transpose = Lu::factor(m.transpose())?;
        let lu = Lu::factor(m)?;
        Ok(Self {
            a,
            q: q.clone(),
            rho,
            lu,
            lu_transpose,
        })
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// `ρ(A)` used in the admissibility test.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn dim(&self) -> usize {
        self.lu.dim()
    }

    /// `y` solving `(I − qA)^T y = 1`.
    pub fn y(&self) -> YVector<T> {
        let ones = vec![T::one(); self.dim()];
        VertexVector(self.lu_transpose.solve(&ones).expect("dimension matches"))
    }

    /// `(I − qA)^{−1} ε`.
    pub fn measure(&self, epsilon: &[T]) -> Result<MeasureVector<T>, KmsError> {
        check_len(epsilon, self.dim())?;
        Ok(VertexVector(self.lu.solve(epsilon)?))
    }

    /// `(I − qA) m`.
    pub fn epsilon(&self, m: &[T]) -> Result<EpsilonVector<T>, KmsError> {
        check_len(m, self.dim())?;
        Ok(apply_identity_minus(&self.a, &self.q, m))
    }
}

fn apply_identity_minus<T: Scalar>(a: &NonnegIntMatrix, q: &T, m: &[T]) -> EpsilonVector<T> {
    let n = a.rows();
    VertexVector(
        (0..n)
            .map(|v| {
                let am = (0..n).fold(T::zero(), |acc, w| acc + T::from_count(a.get(v, w)) * m[w].clone());
                m[v].clone() - q.clone() * am
            })
            .collect(),
    )
}

/// `y_v = Σ_{μ ∈ E^*v} q^{|μ|}`, computed as the column sums of the resolvent.
pub fn y_vector<T: Scalar>(graph: &DirectedGraph, q: &T) -> Result<YVector<T>, KmsError> {
    Ok(Resolvent::new(graph, q)?.y())
}

/// Extreme points `ε^u = y_u^{−1} δ_u` of `Σ_β`, one per vertex.
pub fn simplex_extreme_points<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
) -> Result<Vec<EpsilonVector<T>>, KmsError> {
    let y = y_vector(graph, q)?;
    Ok(extreme_points_from_y(&y, 0..graph.vertex_count()))
}

fn extreme_points_from_y<T: Scalar>(
    y: &YVector<T>,
    support: impl IntoIterator<Item = usize>,
) -> Vec<EpsilonVector<T>> {
    support
        .into_iter()
        .map(|u| VertexVector::basis(y.len(), u, T::one() / y[u].clone()))
        .collect()
}

/// Extreme points of the simplex of states that factor through `C*(E)`:
/// the `ε^u` with `u` a source.
pub fn ck_simplex_extreme_points<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
) -> Result<Vec<EpsilonVector<T>>, KmsError> {
    let y = y_vector(graph, q)?;
    Ok(extreme_points_from_y(&y, graph.sources()))
}

/// `m = (I − qA)^{−1} ε` for `ε ≥ 0`.
pub fn measure_from_epsilon<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    epsilon: &[T],
) -> Result<MeasureVector<T>, KmsError> {
    check_nonnegative(epsilon)?;
    Resolvent::new(graph, q)?.measure(epsilon)
}

/// `ε = (I − qA) m`. Negative entries signal that `m` is not subinvariant.
pub fn epsilon_from_measure<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    m: &[T],
) -> Result<EpsilonVector<T>, KmsError> {
    check_len(m, graph.vertex_count())?;
    Ok(apply_identity_minus(&graph.vertex_matrix(), q, m))
}

/// Whether `φ_ε` factors through `C*(E)`: `ε_v = 0` (within `1e−9`) at every
/// vertex that is not a source. Cross-checked against `(qAm)_v = m_v` on
/// non-sources.
pub fn factors_through_ck<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    epsilon: &[T],
) -> Result<bool, KmsError> {
    let resolvent = Resolvent::new(graph, q)?;
    let m = resolvent.measure(epsilon)?;
    let by_epsilon = vanishes_off_sources(graph, epsilon);
    let by_measure = vanishes_off_sources(graph, &resolvent.epsilon(&m)?);
    if by_epsilon != by_measure {
        return Err(KmsError::CrossCheck(format!(
            "ε-criterion says {by_epsilon}, measure criterion says {by_measure}"
        )));
    }
    Ok(by_epsilon)
}

pub(crate) fn vanishes_off_sources<T: Scalar>(graph: &DirectedGraph, epsilon: &[T]) -> bool {
    let zero = T::from_tol(tol::CK_ZERO);
    (0..graph.vertex_count())
        .filter(|&v| !graph.received(v).is_empty())
        .all(|v| epsilon[v].abs() <= zero)
}

/// Rescales a nonzero direction `d ≥ 0` onto `Σ_β`: `ε = d / (d·y)`.
pub fn normalize_ray<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    direction: &[T],
) -> Result<EpsilonVector<T>, KmsError> {
    check_len(direction, graph.vertex_count())?;
    check_nonnegative(direction)?;
    let y = y_vector(graph, q)?;
    let scale = y.dot(direction);
    if scale.is_zero() {
        return Err(KmsError::NotNormalized {
            what: "ray·y",
            value: 0.0,
        });
    }
    Ok(VertexVector(
        direction.iter().map(|d| d.clone() / scale.clone()).collect(),
    ))
}

/// The state `φ_ε` for `ε ∈ Σ_β`, checking `ε ≥ 0` and `|ε·y − 1| ≤ tolerance`.
pub fn toeplitz_state<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    epsilon: &[T],
    tolerance: f64,
) -> Result<KmsState<T>, KmsError> {
    check_len(epsilon, graph.vertex_count())?;
    check_nonnegative(epsilon)?;
    let resolvent = Resolvent::new(graph, q)?;
    let y = resolvent.y();
    let norm = y.dot(epsilon);
    if (norm.clone() - T::one()).abs() > T::from_tol(tolerance) {
        return Err(KmsError::NotNormalized {
            what: "ε·y",
            value: norm.to_f64_lossy(),
        });
    }
    let m = resolvent.measure(epsilon)?;
    Ok(KmsState {
        q: q.clone(),
        m,
        epsilon: VertexVector(epsilon.to_vec()),
        kind: StateKind::Toeplitz,
        factors_through_ck: vanishes_off_sources(graph, epsilon),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn single_loop() -> DirectedGraph {
        DirectedGraph::from_index_pairs(1, &[(0, 0)]).unwrap()
    }

    /// v = 0, w = 1, edge w -> v.
    fn edge() -> DirectedGraph {
        DirectedGraph::from_index_pairs(2, &[(0, 1)]).unwrap()
    }

    /// Truncated path series `Σ_{|μ| ≤ depth, s(μ) = v} q^{|μ|}`.
    fn y_by_paths(graph: &DirectedGraph, q: f64, depth: usize) -> Vec<f64> {
        (0..graph.vertex_count())
            .map(|v| {
                (0..=depth)
                    .map(|n| graph.enumerate_paths(n, Some(v)).len() as f64 * q.powi(n as i32))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn y_examples_exact() {
        assert_eq!(y_vector(&single_loop(), &r(1, 2)).unwrap().0, vec![r(2, 1)]);
        let q = r(1, 3);
        assert_eq!(y_vector(&edge(), &q).unwrap().0, vec![r(1, 1), r(4, 3)]);
        let bare = DirectedGraph::from_index_pairs(1, &[]).unwrap();
        assert_eq!(y_vector(&bare, &r(7, 1)).unwrap().0, vec![r(1, 1)]);
    }

    #[test]
    fn y_matches_path_series() {
        let g = DirectedGraph::from_index_pairs(3, &[(0, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        let y = y_vector(&g, &0.3).unwrap();
        let oracle = y_by_paths(&g, 0.3, 30);
        for (a, b) in y.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn extreme_point_examples() {
        assert_eq!(simplex_extreme_points(&single_loop(), &r(1, 2)).unwrap()[0].0, vec![r(1, 2)]);
        let pts = simplex_extreme_points(&edge(), &r(1, 2)).unwrap();
        // y = (1, 3/2) so ε^v = (1, 0) and ε^w = (0, 2/3)
        assert_eq!(pts[0].0, vec![r(1, 1), r(0, 1)]);
        assert_eq!(pts[1].0, vec![r(0, 1), r(2, 3)]);
        let two = DirectedGraph::from_index_pairs(2, &[]).unwrap();
        let pts = simplex_extreme_points(&two, &0.9).unwrap();
        assert_eq!(pts[0].0, vec![1.0, 0.0]);
        assert_eq!(pts[1].0, vec![0.0, 1.0]);
    }

    #[test]
    fn measure_examples() {
        assert_eq!(
            measure_from_epsilon(&single_loop(), &r(1, 2), &[r(1, 2)]).unwrap().0,
            vec![r(1, 1)]
        );
        assert_eq!(
            measure_from_epsilon(&edge(), &r(1, 2), &[r(0, 1), r(2, 3)]).unwrap().0,
            vec![r(1, 3), r(2, 3)]
        );
        let g = DirectedGraph::from_index_pairs(2, &[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(measure_from_epsilon(&g, &0.2, &[0.0, 0.0]).unwrap().0, vec![0.0, 0.0]);
        assert!(matches!(
            measure_from_epsilon(&g, &0.2, &[-1.0, 0.0]),
            Err(KmsError::NegativeEntry { vertex: 0, .. })
        ));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_from_measure(&single_loop(), &r(1, 2), &[r(1, 1)]).unwrap().0, vec![r(1, 2)]);
        let o2 = DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(epsilon_from_measure(&o2, &r(1, 2), &[r(1, 1)]).unwrap().0, vec![r(0, 1)]);
        assert_eq!(epsilon_from_measure(&single_loop(), &2.0, &[1.0]).unwrap().0, vec![-1.0]);
    }

    #[test]
    fn admissibility_guard() {
        let o2 = DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        assert!(matches!(y_vector(&o2, &1.0), Err(KmsError::Inadmissible { .. })));
        assert!(matches!(y_vector(&o2, &0.5), Err(KmsError::Inadmissible { .. })));
        assert!(y_vector(&o2, &0.49).is_ok());
        assert!(matches!(y_vector(&o2, &0.0), Err(KmsError::NonPositiveQ(_))));
        // acyclic: every q > 0 is admissible
        assert!(y_vector(&edge(), &1e6).is_ok());
    }

    #[test]
    fn ck_examples() {
        assert!(factors_through_ck(&edge(), &0.5, &[0.0, 2.0 / 3.0]).unwrap());
        assert!(!factors_through_ck(&edge(), &0.5, &[1.0, 0.0]).unwrap());
        assert!(!factors_through_ck(&single_loop(), &0.5, &[0.5]).unwrap());

        let pts = ck_simplex_extreme_points(&edge(), &r(1, 2)).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].0, vec![r(0, 1), r(2, 3)]);
        assert!(ck_simplex_extreme_points(&single_loop(), &0.5).unwrap().is_empty());
        let two = DirectedGraph::from_index_pairs(2, &[]).unwrap();
        assert_eq!(ck_simplex_extreme_points(&two, &0.5).unwrap().len(), 2);
    }

    #[test]
    fn toeplitz_state_checks_normalization() {
        let s = toeplitz_state(&edge(), &0.5f64, &[0.0, 2.0 / 3.0], tol::NORMALIZATION).unwrap();
        assert!((s.m[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!(s.factors_through_ck);
        assert!(matches!(
            toeplitz_state(&edge(), &0.5, &[0.0, 1.0], tol::NORMALIZATION),
            Err(KmsError::NotNormalized { .. })
        ));
        let ray = normalize_ray(&edge(), &0.5f64, &[1.0, 1.0]).unwrap();
        assert!((ray.dot(&[1.0, 1.5]) - 1.0).abs() < 1e-15);
    }
}
