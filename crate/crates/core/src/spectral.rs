//! Spectral radius, Perron vectors and subinvariance for vertex matrices.
//!
//! The spectral radius is computed by power iteration on `B + I` for every
//! irreducible diagonal block `B` of `A` (the strongly connected classes).
//! The shift makes each block primitive, so the iteration converges
//! geometrically even for periodic blocks, and `ρ(A)` is the largest block
//! radius because the spectrum of a block-triangular matrix is the union of
//! the spectra of its diagonal blocks. Nilpotent matrices are detected
//! exactly in integer arithmetic and never iterated.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{has_cycle, DirectedGraph, NonnegIntMatrix};
use crate::scalar::{max_abs, tol, RealScalar, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is reducible; a strictly positive Perron vector is not guaranteed")]
    Reducible,
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
}

/// Coarse location of `ρ(A)` for a vertex matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectralClass {
    Zero,
    One,
    AtLeastOne,
    GreaterThanOne,
}

impl SpectralClass {
    /// Classifies a numerically computed radius using `band`.
    ///
    /// Radii strictly between `band` and `1 − band` cannot occur for integer
    /// matrices; they are reported as `AtLeastOne`.
    pub fn from_rho(rho: f64, band: f64) -> Self {
        if rho < band {
            SpectralClass::Zero
        } else if (rho - 1.0).abs() < band {
            SpectralClass::One
        } else if rho > 1.0 + band {
            SpectralClass::GreaterThanOne
        } else {
            SpectralClass::AtLeastOne
        }
    }

    /// Whether a numerical radius is consistent with this class within `band`.
    pub fn admits(self, rho: f64, band: f64) -> bool {
        match self {
            SpectralClass::Zero => rho < band,
            SpectralClass::One => (rho - 1.0).abs() < band,
            SpectralClass::AtLeastOne => rho >= 1.0 - band,
            SpectralClass::GreaterThanOne => rho > 1.0 + band,
        }
    }

    /// The exact radius when the class pins it down.
    pub fn exact_rho(self) -> Option<f64> {
        match self {
            SpectralClass::Zero => Some(0.0),
            SpectralClass::One => Some(1.0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport<T> {
    pub rho: T,
    pub classification: SpectralClass,
    pub iterations: usize,
    /// `‖(A − ρ)x‖_∞` for the dominant block's normalized eigenvector.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerronVector<T> {
    /// Strictly positive, entries sum to one.
    pub x: Vec<T>,
    pub rho: T,
    pub residual: T,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterationOptions {
    pub max_iterations: usize,
    /// Stop when successive eigenvalue estimates and iterates both move by less than this.
    pub step_tol: f64,
    /// Perron vectors with a larger residual are rejected.
    pub residual_tol: f64,
    pub classification_band: f64,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        Self {
            max_iterations: tol::MAX_POWER_ITERATIONS,
            step_tol: tol::POWER_STEP,
            residual_tol: tol::EIGEN_RESIDUAL,
            classification_band: tol::CLASSIFICATION_BAND,
        }
    }
}

fn check_square(a: &NonnegIntMatrix) -> Result<(), SpectralError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(SpectralError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Strongly connected classes of the digraph with an arc `j → i` whenever `A(i, j) > 0`.
fn matrix_classes(a: &NonnegIntMatrix) -> (Vec<Vec<usize>>, Vec<Vec<bool>>) {
    let n = a.rows();
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let mut stack: Vec<usize> = (0..n).filter(|&i| a.get(i, start) > 0).collect();
        for &i in &stack {
            reach[start][i] = true;
        }
        while let Some(u) = stack.pop() {
            for i in 0..n {
                if a.get(i, u) > 0 && !reach[start][i] {
                    reach[start][i] = true;
                    stack.push(i);
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let class: Vec<usize> = (v..n)
            .filter(|&w| w == v || (reach[v][w] && reach[w][v]))
            .collect();
        for &w in &class {
            assigned[w] = true;
        }
        classes.push(class);
    }
    (classes, reach)
}

/// Irreducibility in the usual sense; a `1×1` zero matrix is reducible.
pub fn is_irreducible(a: &NonnegIntMatrix) -> bool {
    if !a.is_square() || a.rows() == 0 {
        return false;
    }
    let (_, reach) = matrix_classes(a);
    reach.iter().all(|row| row.iter().all(|&b| b))
}

struct PowerResult<T> {
    x: Vec<T>,
    rho: T,
    residual: T,
    iterations: usize,
}

/// Power iteration on `A + I` restricted to an irreducible index set.
fn shifted_power_iteration<T: RealScalar>(
    a: &NonnegIntMatrix,
    block: &[usize],
    opts: &PowerIterationOptions,
) -> Result<PowerResult<T>, SpectralError> {
    let k = block.len();
    let entry = |i: usize, j: usize| T::from_count(a.get(block[i], block[j]));
    let apply = |x: &[T]| -> Vec<T> {
        (0..k)
            .map(|i| (0..k).fold(x[i], |acc, j| acc + entry(i, j) * x[j]))
            .collect()
    };
    let k_t = T::from_count(k as u64);
    let mut x = vec![T::one() / k_t; k];
    let mut lambda = T::zero();
    let step_tol = T::from_tol(opts.step_tol);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        let y = apply(&x);
        let next: T = y.iter().copied().fold(T::zero(), |acc, v| acc + v);
        let moved: Vec<T> = y.iter().zip(&x).map(|(&v, &old)| v / next - old).collect();
        x = y.into_iter().map(|v| v / next).collect();
        let step = (next - lambda).abs();
        lambda = next;
        // The sum estimate alone can be exact long before the vector settles
        // (constant column sums), so both must stall.
        if step < step_tol && max_abs(&moved) < step_tol {
            converged = true;
            break;
        }
    }
    let rho = lambda - T::one();
    let bx = apply(&x);
    let resid: Vec<T> = bx.iter().zip(&x).map(|(&b, &xi)| b - lambda * xi).collect();
    let residual = max_abs(&resid);
    if !converged {
        return Err(SpectralError::NotConverged {
            iterations,
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(PowerResult {
        x,
        rho,
        residual,
        iterations,
    })
}

/// `ρ(A)` to within roughly `1e−10` for `f64`.
pub fn spectral_radius<T: RealScalar>(a: &NonnegIntMatrix) -> Result<SpectralReport<T>, SpectralError> {
    spectral_radius_with(a, &PowerIterationOptions::default())
}

pub fn spectral_radius_with<T: RealScalar>(
    a: &NonnegIntMatrix,
    opts: &PowerIterationOptions,
) -> Result<SpectralReport<T>, SpectralError> {
    check_square(a)?;
    if a.rows() == 0 || a.is_nilpotent() {
        return Ok(SpectralReport {
            rho: T::zero(),
            classification: SpectralClass::Zero,
            iterations: 0,
            residual: T::zero(),
        });
    }
    let (classes, _) = matrix_classes(a);
    let mut best: Option<PowerResult<T>> = None;
    let mut iterations = 0;
    for class in classes {
        let trivial = class.len() == 1 && a.get(class[0], class[0]) == 0;
        if trivial {
            continue;
        }
        let result = shifted_power_iteration::<T>(a, &class, opts)?;
        iterations += result.iterations;
        if best.as_ref().is_none_or(|b| result.rho > b.rho) {
            best = Some(result);
        }
    }
    let best = best.expect("a non-nilpotent matrix has a nontrivial class");
    Ok(SpectralReport {
        classification: SpectralClass::from_rho(best.rho.to_f64_lossy(), opts.classification_band),
        rho: best.rho,
        iterations,
        residual: best.residual,
    })
}

/// Unimodular Perron–Frobenius eigenvector of an irreducible matrix.
pub fn perron_vector<T: RealScalar>(a: &NonnegIntMatrix) -> Result<PerronVector<T>, SpectralError> {
    perron_vector_with(a, &PowerIterationOptions::default())
}

pub fn perron_vector_with<T: RealScalar>(
    a: &NonnegIntMatrix,
    opts: &PowerIterationOptions,
) -> Result<PerronVector<T>, SpectralError> {
    check_square(a)?;
    if !is_irreducible(a) {
        return Err(SpectralError::Reducible);
    }
    let all: Vec<usize> = (0..a.rows()).collect();
    let result = shifted_power_iteration::<T>(a, &all, opts)?;
    if result.residual > T::from_tol(opts.residual_tol) || result.x.iter().any(|&v| v <= T::zero()) {
        return Err(SpectralError::NotConverged {
            iterations: result.iterations,
            residual: result.residual.to_f64_lossy(),
        });
    }
    Ok(PerronVector {
        x: result.x,
        rho: result.rho,
        residual: result.residual,
        iterations: result.iterations,
    })
}

/// Structural classification of `ρ(A)` without floating point:
/// no cycles gives `Zero`; a union of disjoint cycles (a permutation vertex
/// matrix) gives `One`; strongly connected and not a cycle gives
/// `GreaterThanOne`; any other graph with a cycle gives `AtLeastOne`.
pub fn classify_graph_spectrum(graph: &DirectedGraph) -> SpectralClass {
    if !has_cycle(graph) {
        return SpectralClass::Zero;
    }
    let disjoint_cycles =
        (0..graph.vertex_count()).all(|v| graph.received(v).len() == 1 && graph.emitted(v).len() == 1);
    if disjoint_cycles {
        SpectralClass::One
    } else if graph.strongly_connected() {
        SpectralClass::GreaterThanOne
    } else {
        SpectralClass::AtLeastOne
    }
}

/// `ρ(A)` as `f64`, exact when the structural class pins it down.
pub fn critical_rho(graph: &DirectedGraph) -> Result<f64, SpectralError> {
    let class = classify_graph_spectrum(graph);
    match class.exact_rho() {
        Some(rho) => Ok(rho),
        None => Ok(spectral_radius::<f64>(&graph.vertex_matrix())?.rho),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubinvarianceCheck<T> {
    pub ok: bool,
    /// `m − qAm`.
    pub slack: Vec<T>,
}

/// Tests `qAm ≤ m` entrywise within `tolerance`.
pub fn check_subinvariant<T: Scalar>(
    a: &NonnegIntMatrix,
    m: &[T],
    q: &T,
    tolerance: f64,
) -> SubinvarianceCheck<T> {
    let n = a.rows();
    assert_eq!(m.len(), n, "measure length must match the matrix");
    let slack: Vec<T> = (0..n)
        .map(|v| {
            let am = (0..n).fold(T::zero(), |acc, w| acc + T::from_count(a.get(v, w)) * m[w].clone());
            m[v].clone() - q.clone() * am
        })
        .collect();
    let floor = -T::from_tol(tolerance);
    let ok = slack.iter().all(|s| *s >= floor);
    SubinvarianceCheck { ok, slack }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(rows: &[Vec<u64>]) -> NonnegIntMatrix {
        NonnegIntMatrix::from_rows(rows)
    }

    #[test]
    fn radius_examples() {
        let zero = spectral_radius::<f64>(&m(&[vec![0]])).unwrap();
        assert_eq!(zero.rho, 0.0);
        assert_eq!(zero.classification, SpectralClass::Zero);
        assert_eq!(zero.iterations, 0);

        let two = spectral_radius::<f64>(&m(&[vec![2]])).unwrap();
        assert!((two.rho - 2.0).abs() < 1e-12);

        // eigenvalues ±1 from t^2 - 1
        let swap = spectral_radius::<f64>(&m(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert!((swap.rho - 1.0).abs() < 1e-10);
        assert_eq!(swap.classification, SpectralClass::One);
    }

    #[test]
    fn reducible_jordan_block_converges() {
        // Two loops joined by an edge: A = [[1,1],[0,1]], a defective eigenvalue 1.
        let r = spectral_radius::<f64>(&m(&[vec![1, 1], vec![0, 1]])).unwrap();
        assert!((r.rho - 1.0).abs() < 1e-10, "rho = {}", r.rho);
    }

    #[test]
    fn golden_mean_radius() {
        // t^2 - t - 1 = 0
        let r = spectral_radius::<f64>(&m(&[vec![1, 1], vec![1, 0]])).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.rho - phi).abs() < 1e-10);
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn long_cycle_converges() {
        let n = 12;
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| ((i + 1) % n, i)).collect();
        let g = DirectedGraph::from_index_pairs(n, &pairs).unwrap();
        let r = spectral_radius::<f64>(&g.vertex_matrix()).unwrap();
        assert!((r.rho - 1.0).abs() < 1e-10);
    }

    #[test]
    fn works_in_f32() {
        let opts = PowerIterationOptions {
            step_tol: 1e-6,
            residual_tol: 1e-4,
            ..Default::default()
        };
        let r = spectral_radius_with::<f32>(&m(&[vec![1, 1], vec![1, 1]]), &opts).unwrap();
        assert!((r.rho - 2.0).abs() < 1e-5);
        let x = perron_vector_with::<f32>(&m(&[vec![1, 1], vec![1, 1]]), &opts).unwrap();
        assert!((x.x[0] - 0.5).abs() < 1e-5);
    }

    #[test]
    fn perron_examples() {
        let p = perron_vector::<f64>(&m(&[vec![2]])).unwrap();
        assert_eq!(p.x, vec![1.0]);
        let p = perron_vector::<f64>(&m(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert!((p.x[0] - 0.5).abs() < 1e-12 && (p.x[1] - 0.5).abs() < 1e-12);
        let p = perron_vector::<f64>(&m(&[vec![1, 1], vec![1, 1]])).unwrap();
        assert!((p.rho - 2.0).abs() < 1e-12);
        assert!((p.x[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn perron_refuses_reducible() {
        assert_eq!(
            perron_vector::<f64>(&m(&[vec![1, 1], vec![0, 1]])).unwrap_err(),
            SpectralError::Reducible
        );
        assert_eq!(perron_vector::<f64>(&m(&[vec![0]])).unwrap_err(), SpectralError::Reducible);
        assert!(matches!(
            spectral_radius::<f64>(&NonnegIntMatrix::zeros(1, 2)),
            Err(SpectralError::NotSquare { .. })
        ));
    }

    #[test]
    fn structural_examples() {
        let edge = DirectedGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(classify_graph_spectrum(&edge), SpectralClass::Zero);
        let cycle = DirectedGraph::from_index_pairs(3, &[(1, 0), (2, 1), (0, 2)]).unwrap();
        assert_eq!(classify_graph_spectrum(&cycle), SpectralClass::One);
        let o2 = DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(classify_graph_spectrum(&o2), SpectralClass::GreaterThanOne);
        let mixed = DirectedGraph::from_index_pairs(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(classify_graph_spectrum(&mixed), SpectralClass::AtLeastOne);
        assert_eq!(critical_rho(&mixed).unwrap(), 1.0);
        assert_eq!(critical_rho(&cycle).unwrap(), 1.0);
    }

    #[test]
    fn subinvariance_examples() {
        let one = m(&[vec![1]]);
        let c = check_subinvariant(&one, &[1.0], &0.5, tol::SUBINVARIANCE);
        assert!(c.ok);
        assert_eq!(c.slack, vec![0.5]);
        assert!(!check_subinvariant(&one, &[1.0], &2.0, tol::SUBINVARIANCE).ok);
        let two = m(&[vec![2]]);
        let c = check_subinvariant(&two, &[1.0], &0.5, tol::SUBINVARIANCE);
        assert!(c.ok);
        assert_eq!(c.slack, vec![0.0]);
    }

    #[test]
    fn subinvariance_exact_equality_case() {
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::from_integer(1.into());
        let c = check_subinvariant(&m(&[vec![2]]), &[one], &half, 0.0);
        assert!(c.ok);
        assert!(c.slack[0] == BigRational::from_integer(0.into()));
    }

    #[test]
    fn perron_vector_is_subinvariant_equality() {
        let a = m(&[vec![1, 2, 0], vec![0, 0, 1], vec![1, 0, 1]]);
        let p = perron_vector::<f64>(&a).unwrap();
        let c = check_subinvariant(&a, &p.x, &(1.0 / p.rho), tol::SUBINVARIANCE);
        assert!(c.ok);
        assert!(max_abs(&c.slack) < 1e-10);
    }
}
