//! KMS states of the gauge dynamics on the Toeplitz algebra `TC*(E)`.
//!
//! A KMS state is determined by its values on vertex projections, so every
//! state is carried around as a [`KmsState`]: the parameter `q = e^{−β}`, the
//! vertex measure `m`, the vector `ε = (I − qA)m`, and the construction that
//! produced it. Above the critical temperature the states form a simplex
//! parametrized by `Σ_β = {ε ≥ 0 : ε·y = 1}`; see [`simplex`]. Critical and
//! ground states live in [`critical`] and [`ground`].

pub mod critical;
pub mod ground;
pub mod range;
pub mod simplex;

use std::ops::{Deref, DerefMut};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::SpanningElement;
use crate::graph::GraphError;
use crate::linalg::LinalgError;
use crate::scalar::Scalar;
use crate::spectral::SpectralError;

pub use critical::{critical_state_from_measure, critical_state_irreducible, critical_state_with_sources};
pub use ground::ground_state;
pub use range::{beta_range_report, BelowCritical, BetaRangeReport, CriticalStructure};
pub use simplex::{
    ck_simplex_extreme_points, epsilon_from_measure, factors_through_ck, measure_from_epsilon,
    normalize_ray, simplex_extreme_points, toeplitz_state, y_vector, Resolvent,
};

#[derive(Debug, Error, PartialEq)]
pub enum KmsError {
    #[error("q = {q} is not admissible: need q·ρ(A) < 1, i.e. β > ln ρ(A) = {critical_beta} (ρ(A) = {rho})")]
    Inadmissible { q: f64, rho: f64, critical_beta: f64 },
    #[error("q must be positive, got {0}")]
    NonPositiveQ(f64),
    #[error("vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("entry {vertex} is negative ({value})")]
    NegativeEntry { vertex: usize, value: f64 },
    #[error("{what} = {value}, expected 1")]
    NotNormalized { what: &'static str, value: f64 },
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("graph has sinks")]
    HasSinks,
    #[error("E \\ H is not strongly connected")]
    ComplementNotStronglyConnected,
    #[error("graph has no cycles: ρ(A) = 0 and the critical inverse temperature is −∞")]
    Acyclic,
    #[error("measure is not subinvariant at vertex {vertex} (slack {slack})")]
    NotSubinvariant { vertex: usize, slack: f64 },
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Inverse temperature stored as `q = e^{−β} > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Temperature<T> {
    q: T,
}

impl<T: Scalar> Temperature<T> {
    pub fn from_q(q: T) -> Result<Self, KmsError> {
        if q <= T::zero() {
            return Err(KmsError::NonPositiveQ(q.to_f64_lossy()));
        }
        Ok(Self { q })
    }

    pub fn from_beta(beta: f64) -> Result<Self, KmsError> {
        let q = T::from_f64((-beta).exp()).ok_or(KmsError::NonPositiveQ(f64::NAN))?;
        Self::from_q(q)
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn into_q(self) -> T {
        self.q
    }

    pub fn beta(&self) -> f64 {
        -self.q.to_f64_lossy().ln()
    }
}

/// A real vector indexed by vertices in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VertexVector<T>(pub Vec<T>);

/// `m`, with `m_v = φ(p_v)`.
pub type MeasureVector<T> = VertexVector<T>;
/// `ε = (I − qA)m`.
pub type EpsilonVector<T> = VertexVector<T>;
/// `y_v = Σ_{μ ∈ E^*v} q^{|μ|}`.
pub type YVector<T> = VertexVector<T>;

impl<T: Scalar> VertexVector<T> {
    pub fn zeros(n: usize) -> Self {
        Self(vec![T::zero(); n])
    }

    pub fn basis(n: usize, v: usize, value: T) -> Self {
        let mut out = Self::zeros(n);
        out.0[v] = value;
        out
    }

    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn dot(&self, other: &[T]) -> T {
        self.0
            .iter()
            .zip(other)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64_lossy).collect()
    }
}

impl<T> Deref for VertexVector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> DerefMut for VertexVector<T> {
    fn deref_mut(&mut self) -> &mut [T] {
        &mut self.0
    }
}

impl<T> From<Vec<T>> for VertexVector<T> {
    fn from(v: Vec<T>) -> Self {
        Self(v)
    }
}

/// Which construction produced a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateKind {
    /// `φ_ε` for `ε ∈ Σ_β`, above the critical temperature.
    Toeplitz,
    /// Critical state of `C*(E)` for a graph with sources.
    CuntzKrieger,
    /// State at `β = ln ρ(A)`.
    Critical,
    /// Ground (KMS_∞) state; `q = 0` and `m = ε`.
    Ground,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Toeplitz => "Toeplitz",
            StateKind::CuntzKrieger => "CuntzKrieger",
            StateKind::Critical => "Critical",
            StateKind::Ground => "Ground",
        }
    }
}

/// Complete data of a KMS state.
///
/// Except for ground states, `(I − qA)m = ε` holds within tolerance and
/// `Σm = 1`. For ground states `q = 0`, `m = ε`, and no resolvent relation
/// is asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct KmsState<T> {
    pub q: T,
    pub m: MeasureVector<T>,
    pub epsilon: EpsilonVector<T>,
    pub kind: StateKind,
    pub factors_through_ck: bool,
}

impl<T: Scalar> KmsState<T> {
    /// `β = −ln q`; infinite for ground states.
    pub fn beta(&self) -> f64 {
        if self.q.is_zero() {
            f64::INFINITY
        } else {
            -self.q.to_f64_lossy().ln()
        }
    }

    /// `φ(s_μ s_ν*)`.
    pub fn value(&self, a: &SpanningElement) -> T {
        state_value(self, a)
    }
}

/// Evaluates a state on a spanning element:
/// `δ_{μ,ν} q^{|μ|} m_{s(μ)}`, or for ground states `ε_v` on `p_v` and zero
/// on everything else.
pub fn state_value<T: Scalar>(state: &KmsState<T>, a: &SpanningElement) -> T {
    let SpanningElement::Pair { mu, nu } = a else {
        return T::zero();
    };
    if mu != nu {
        return T::zero();
    }
    match state.kind {
        StateKind::Ground => {
            if mu.is_vertex() {
                state.epsilon[mu.source()].clone()
            } else {
                T::zero()
            }
        }
        _ => state.q.powi_exact(mu.len() as u32) * state.m[mu.source()].clone(),
    }
}

fn check_len<T>(v: &[T], n: usize) -> Result<(), KmsError> {
    if v.len() == n {
        Ok(())
    } else {
        Err(KmsError::Dimension {
            expected: n,
            got: v.len(),
        })
    }
}

fn check_nonnegative<T: Scalar>(v: &[T]) -> Result<(), KmsError> {
    match v.iter().position(|x| *x < T::zero()) {
        Some(vertex) => Err(KmsError::NegativeEntry {
            vertex,
            value: v[vertex].to_f64_lossy(),
        }),
        None => Ok(()),
    }
}

/// Nonnegative with entries summing to one within `tolerance`.
pub(crate) fn check_probability<T: Scalar>(v: &[T], tolerance: f64, what: &'static str) -> Result<(), KmsError> {
    check_nonnegative(v)?;
    let total = v.iter().fold(T::zero(), |acc, x| acc + x.clone());
    if (total.clone() - T::one()).abs() > T::from_tol(tolerance) {
        return Err(KmsError::NotNormalized {
            what,
            value: total.to_f64_lossy(),
        });
    }
    Ok(())
}
