//! Independent verification of KMS states against the truncated path-space
//! representation on `ℓ²(E^{≤N})`.
//!
//! A state `φ_ε` is realized as `Σ_λ Δ_λ (π(a)h_λ | h_λ)` with weights
//! `Δ_λ = q^{|λ|} ε_{s(λ)}`. The weights over all of `E^*` sum to `ε·y = 1`,
//! so the mass missed by truncating at depth `N` is exactly
//! `1 − Σ_{|λ| ≤ N} Δ_λ`, which bounds the error of every matrix element.

pub mod checks;
pub mod rep;

use thiserror::Error;

use crate::algebra::SpanningElement;
use crate::graph::{DirectedGraph, Path};
use crate::kms::{KmsError, KmsState, Resolvent};
use crate::scalar::{compensated_sum, tol, CompensatedSum, Scalar};

pub use checks::{check_tck_relations, kms_condition_check, state_consistency_check, CheckResult, VerificationReport};
pub use rep::{Factor, PartialMap, TruncatedRep, Word};

/// Basis-size cap used unless overridden by [`MAX_BASIS_ENV`].
pub const DEFAULT_MAX_BASIS: usize = 20_000;
pub const MAX_BASIS_ENV: &str = "KMSGRAPH_MAX_BASIS";

/// Depth search gives up past this length, which only matters for acyclic
/// graphs where the basis stops growing.
const MAX_AUTO_DEPTH: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("depth {depth} needs {needed} basis paths, above the cap of {cap} (set {MAX_BASIS_ENV} to raise it)")]
    BasisCap { depth: usize, needed: u64, cap: usize },
    #[error("tail mass {tail} is still above {target} at depth {depth}")]
    DepthNotReached { depth: usize, tail: f64, target: f64 },
    #[error("invalid {MAX_BASIS_ENV}: {0:?}")]
    InvalidCap(String),
    #[error(transparent)]
    Kms(#[from] KmsError),
}

/// Reads [`MAX_BASIS_ENV`], falling back to [`DEFAULT_MAX_BASIS`].
pub fn max_basis_from_env() -> Result<usize, OracleError> {
    match std::env::var(MAX_BASIS_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| OracleError::InvalidCap(s)),
        Err(_) => Ok(DEFAULT_MAX_BASIS),
    }
}

/// Checks `ε ≥ 0`, `q ≥ 0` and `ε ∈ Σ_β` (for `q = 0`, `Σε = 1`).
fn check_simplex_member<T: Scalar>(graph: &DirectedGraph, q: &T, epsilon: &[T]) -> Result<(), KmsError> {
    if *q < T::zero() {
        return Err(KmsError::NonPositiveQ(q.to_f64_lossy()));
    }
    if epsilon.len() != graph.vertex_count() {
        return Err(KmsError::Dimension {
            expected: graph.vertex_count(),
            got: epsilon.len(),
        });
    }
    if let Some(vertex) = epsilon.iter().position(|x| *x < T::zero()) {
        return Err(KmsError::NegativeEntry {
            vertex,
            value: epsilon[vertex].to_f64_lossy(),
        });
    }
    let norm = if q.is_zero() {
        epsilon.iter().fold(T::zero(), |a, x| a + x.clone())
    } else {
        Resolvent::new(graph, q)?.y().dot(epsilon)
    };
    if (norm.clone() - T::one()).abs() > T::from_tol(tol::NORMALIZATION) {
        return Err(KmsError::NotNormalized {
            what: "ε·y",
            value: norm.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Result of the automatic depth search.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthSelection<T> {
    pub depth: usize,
    /// `1 − Σ_{|λ| ≤ depth − margin} Δ_λ`.
    pub tail: T,
    pub basis_size: u64,
}

/// Smallest `N` with tail mass below `target`, plus `margin` extra levels.
///
/// The layer masses `Σ_{|λ| = n} Δ_λ = q^n 1^T A^n ε` are accumulated without
/// building the basis.
pub fn choose_depth<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    epsilon: &[T],
    target: f64,
    margin: usize,
    max_basis: usize,
) -> Result<DepthSelection<T>, OracleError> {
    check_simplex_member(graph, q, epsilon)?;
    let n = graph.vertex_count();
    let target_t = T::from_tol(target);
    // g[v] = q^k · #{paths of length k with source v}
    let mut g = vec![T::one(); n];
    let mut tail = T::one();
    for k in 0..=MAX_AUTO_DEPTH {
        let layer = g
            .iter()
            .zip(epsilon)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        tail = tail - layer;
        let sizes = rep::basis_sizes(graph, k + margin);
        let basis_size = *sizes.last().expect("nonempty");
        if basis_size > max_basis as u64 {
            return Err(OracleError::BasisCap {
                depth: k + margin,
                needed: basis_size,
                cap: max_basis,
            });
        }
        if tail < target_t {
            return Ok(DepthSelection {
                depth: k + margin,
                tail,
                basis_size,
            });
        }
        let mut next = vec![T::zero(); n];
        for e in graph.edges() {
            next[e.source] = next[e.source].clone() + q.clone() * g[e.range].clone();
        }
        g = next;
    }
    Err(OracleError::DepthNotReached {
        depth: MAX_AUTO_DEPTH,
        tail: tail.to_f64_lossy(),
        target,
    })
}

/// `Δ_λ` for each basis path and the tail masses.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T> {
    delta: Vec<T>,
    /// `tails[k] = 1 − Σ_{|λ| ≤ k} Δ_λ`.
    tails: Vec<T>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(graph: &DirectedGraph, rep: &TruncatedRep, q: &T, epsilon: &[T]) -> Result<Self, OracleError> {
        check_simplex_member(graph, q, epsilon)?;
        let powers: Vec<T> = (0..=rep.depth()).map(|k| q.powi_exact(k as u32)).collect();
        let delta: Vec<T> = rep
            .basis()
            .iter()
            .map(|p| powers[p.len()].clone() * epsilon[p.source()].clone())
            .collect();
        let mut layers: Vec<CompensatedSum<T>> = vec![CompensatedSum::new(T::zero()); rep.depth() + 1];
        for (p, d) in rep.basis().iter().zip(&delta) {
            layers[p.len()].add(d.clone());
        }
        let mut running = CompensatedSum::new(T::one());
        let tails = layers
            .iter()
            .map(|layer| {
                running.add(-layer.value());
                running.value()
            })
            .collect();
        Ok(Self { delta, tails })
    }

    pub fn delta(&self) -> &[T] {
        &self.delta
    }

    /// `1 − Σ_{|λ| ≤ N} Δ_λ`.
    pub fn tail_mass(&self) -> &T {
        self.tails.last().expect("depth ≥ 0")
    }

    /// `1 − Σ_{|λ| ≤ k} Δ_λ`; one for negative `k`.
    pub fn tail_after(&self, k: isize) -> T {
        if k < 0 {
            T::one()
        } else {
            self.tails[(k as usize).min(self.tails.len() - 1)].clone()
        }
    }
}

/// An oracle matrix element together with a guaranteed error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleValue<T> {
    pub value: T,
    pub error_bound: T,
}

/// Truncated representation plus weights for one `(q, ε)`.
#[derive(Debug, Clone)]
pub struct Oracle<T> {
    rep: TruncatedRep,
    weights: WeightVector<T>,
    q: T,
}

impl<T: Scalar> Oracle<T> {
    pub fn new(graph: &DirectedGraph, q: &T, epsilon: &[T], depth: usize, max_basis: usize) -> Result<Self, OracleError> {
        check_simplex_member(graph, q, epsilon)?;
        let rep = TruncatedRep::build(graph, depth, max_basis)?;
        let weights = WeightVector::new(graph, &rep, q, epsilon)?;
        Ok(Self {
            rep,
            weights,
            q: q.clone(),
        })
    }

    /// Depth chosen by [`choose_depth`] with target tail `1e−8`.
    pub fn auto(graph: &DirectedGraph, q: &T, epsilon: &[T], margin: usize, max_basis: usize) -> Result<Self, OracleError> {
        let sel = choose_depth(graph, q, epsilon, tol::ORACLE_TAIL, margin, max_basis)?;
        Self::new(graph, q, epsilon, sel.depth, max_basis)
    }

    pub fn rep(&self) -> &TruncatedRep {
        &self.rep
    }

    pub fn weights(&self) -> &WeightVector<T> {
        &self.weights
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn depth(&self) -> usize {
        self.rep.depth()
    }

    pub fn tail_mass(&self) -> &T {
        self.weights.tail_mass()
    }

    /// `Σ_λ Δ_λ (π(w)h_λ | h_λ)`. Basis paths with `|λ| ≤ N − growth` are
    /// never truncated while the word acts, so the error is at most the tail
    /// beyond that length.
    pub fn word_value(&self, word: &Word) -> OracleValue<T> {
        let value = compensated_sum(
            (0..self.rep.dim())
                .filter(|&i| self.rep.apply(word, i) == Some(i))
                .map(|i| self.weights.delta[i].clone()),
        );
        let safe = self.depth() as isize - word.max_growth() as isize;
        OracleValue {
            value,
            error_bound: self.weights.tail_after(safe),
        }
    }

    pub fn value(&self, a: &SpanningElement) -> OracleValue<T> {
        match Word::spanning(a) {
            Some(w) => self.word_value(&w),
            None => OracleValue {
                value: T::zero(),
                error_bound: T::zero(),
            },
        }
    }

    /// `φ(ab)`, with the product taken in the represented operators.
    pub fn product_value(&self, a: &SpanningElement, b: &SpanningElement) -> OracleValue<T> {
        match (Word::spanning(a), Word::spanning(b)) {
            (Some(wa), Some(wb)) => self.word_value(&wa.then(&wb)),
            _ => OracleValue {
                value: T::zero(),
                error_bound: T::zero(),
            },
        }
    }

    /// Series form of the cylinder measure: `Σ_{r(λ) = s(α)} Δ_{αλ}` over the basis.
    pub fn cylinder_series(&self, alpha: &Path) -> OracleValue<T> {
        let weights = self
            .rep
            .basis()
            .iter()
            .zip(self.weights.delta())
            .filter(|(p, _)| p.strip_prefix(alpha).is_some())
            .map(|(_, d)| d.clone());
        let value = compensated_sum(weights);
        OracleValue {
            value,
            error_bound: self.tail_mass().clone(),
        }
    }
}

/// `Σ_{|λ| ≤ N} Δ_λ (π(a)h_λ | h_λ)` with automatic depth when `depth` is `None`.
pub fn oracle_state_value<T: Scalar>(
    graph: &DirectedGraph,
    q: &T,
    epsilon: &[T],
    depth: Option<usize>,
    a: &SpanningElement,
) -> Result<OracleValue<T>, OracleError> {
    let cap = max_basis_from_env()?;
    let oracle = match depth {
        Some(n) => Oracle::new(graph, q, epsilon, n, cap)?,
        None => Oracle::auto(graph, q, epsilon, 0, cap)?,
    };
    Ok(oracle.value(a))
}

/// `μ(Z(α)) = q^{|α|} m_{s(α)}`.
pub fn cylinder_measure<T: Scalar>(state: &KmsState<T>, alpha: &Path) -> T {
    state.q.powi_exact(alpha.len() as u32) * state.m[alpha.source()].clone()
}
