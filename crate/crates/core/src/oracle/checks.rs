//! Relation and functional-equation checks, collected into reports.

use serde::Serialize;

use crate::algebra::{multiply_spanning, SpanningElement};
use crate::graph::DirectedGraph;
use crate::kms::{state_value, KmsState, StateKind};
use crate::scalar::{tol, Scalar};
use crate::spectral::check_subinvariant;

use super::rep::{Factor, TruncatedRep, Word};
use super::Oracle;

/// Subsets of `vE^1` are enumerated up to this many edges; beyond it only
/// `F = vE^1` is checked, which implies the rest because every `T_e T_e*`
/// is a diagonal 0/1 matrix.
const MAX_SUBSET_EDGES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    /// Truncation depth of the oracle, when one was used.
    pub depth: Option<usize>,
    /// Tail mass `1 − Σ_{|λ| ≤ N} Δ_λ`, when an oracle was used.
    pub tail_bound: Option<f64>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self {
            passed: true,
            ..Self::default()
        }
    }

    pub fn push(&mut self, name: impl Into<String>, deviation: f64, tolerance: f64) {
        let passed = deviation <= tolerance;
        self.passed &= passed;
        self.checks.push(CheckResult {
            name: name.into(),
            deviation,
            tolerance,
            passed,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.passed &= other.passed;
        self.checks.extend(other.checks);
        self.depth = self.depth.or(other.depth);
        self.tail_bound = self.tail_bound.or(other.tail_bound);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Largest `|row difference|` between two partial maps on the given columns.
fn map_deviation(rep: &TruncatedRep, lhs: &Word, rhs: &Word, columns: &[usize]) -> f64 {
    let differs = columns.iter().any(|&i| rep.apply(lhs, i) != rep.apply(rhs, i));
    if differs {
        1.0
    } else {
        0.0
    }
}

/// Toeplitz–Cuntz–Krieger relations on the interior subspace spanned by
/// `{h_μ : |μ| ≤ N − 1}`, in exact integer arithmetic:
///
/// * `T_e* T_e = Q_{s(e)}`,
/// * `Q_v ≥ Σ_{e ∈ F} T_e T_e*` for `F ⊆ vE^1`,
/// * `T_e* T_f = 0` for `e ≠ f`,
/// * `Q_v Q_w = 0` for `v ≠ w`.
pub fn check_tck_relations(graph: &DirectedGraph, rep: &TruncatedRep) -> VerificationReport {
    let interior: Vec<usize> = (0..rep.dim())
        .filter(|&i| rep.basis()[i].len() < rep.depth())
        .collect();
    let mut report = VerificationReport::new();
    report.depth = Some(rep.depth());

    let mut isometry = 0.0f64;
    for (e, edge) in graph.edges().iter().enumerate() {
        let lhs = Word(vec![Factor::Annihilate(e), Factor::Create(e)]);
        let rhs = Word(vec![Factor::Vertex(edge.source)]);
        isometry = isometry.max(map_deviation(rep, &lhs, &rhs, &interior));
    }
    report.push("tck_isometry", isometry, 0.0);

    // each T_e T_e* must be diagonal; then Q_v − Σ_F T_e T_e* is diagonal
    // and positivity is entrywise
    let mut projection = 0i64;
    for v in 0..graph.vertex_count() {
        let received = graph.received(v);
        let diag: Vec<Vec<i64>> = received
            .iter()
            .map(|&e| {
                let w = Word(vec![Factor::Create(e), Factor::Annihilate(e)]);
                interior
                    .iter()
                    .map(|&i| match rep.apply(&w, i) {
                        None => 0,
                        Some(j) if j == i => 1,
                        // an off-diagonal entry breaks the diagonal form
                        Some(_) => i64::MIN / 4,
                    })
                    .collect()
            })
            .collect();
        let q_v: Vec<i64> = interior
            .iter()
            .map(|&i| i64::from(rep.basis()[i].range() == v))
            .collect();
        let subsets: Vec<u64> = if received.len() <= MAX_SUBSET_EDGES {
            (1..1u64 << received.len()).collect()
        } else {
            vec![u64::MAX]
        };
        for mask in subsets {
            for (k, q) in q_v.iter().enumerate() {
                let sum: i64 = (0..received.len())
                    .filter(|&j| mask >> j & 1 == 1)
                    .map(|j| diag[j][k])
                    .sum();
                let value = q - sum;
                if value < 0 || sum < 0 {
                    projection = projection.max(value.abs().max(1));
                }
            }
        }
    }
    report.push("tck_range_projections", projection as f64, 0.0);

    let mut orthogonality = 0.0f64;
    for e in 0..graph.edge_count() {
        for f in 0..graph.edge_count() {
            if e != f {
                let w = Word(vec![Factor::Annihilate(e), Factor::Create(f)]);
                if interior.iter().any(|&i| rep.apply(&w, i).is_some()) {
                    orthogonality = 1.0;
                }
            }
        }
    }
    report.push("tck_edge_orthogonality", orthogonality, 0.0);

    let mut vertices = 0.0f64;
    for v in 0..graph.vertex_count() {
        for w in 0..graph.vertex_count() {
            if v != w {
                let word = Word(vec![Factor::Vertex(v), Factor::Vertex(w)]);
                if interior.iter().any(|&i| rep.apply(&word, i).is_some()) {
                    vertices = 1.0;
                }
            }
        }
    }
    report.push("vertex_orthogonality", vertices, 0.0);
    report
}

/// The KMS functional equation `φ(ab) = q^{deg a} φ(ba)` over a sample of
/// pairs. When `deg a < 0` it is checked as `φ(ba) = q^{−deg a} φ(ab)`,
/// which is equivalent for `q > 0` and meaningful for ground states.
///
/// Symbolically the products come from the product formula and `φ` from
/// [`state_value`]. With an oracle, the same identity is checked on operator
/// products in the truncated representation, and the oracle values are
/// compared with the symbolic ones; both within the tail bounds.
pub fn kms_condition_check<T: Scalar>(
    state: &KmsState<T>,
    oracle: Option<&Oracle<T>>,
    sample: &[(SpanningElement, SpanningElement)],
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut symbolic = T::zero();
    // (excess over bound, deviation, bound) of the worst pair
    let mut worst_kms: Option<(f64, f64, f64)> = None;
    let mut worst_agreement: Option<(f64, f64, f64)> = None;
    let slack = tol::ROUNDING;

    for (a, b) in sample {
        let Some(deg) = a.degree() else { continue };
        let ab = multiply_spanning(a, b);
        let ba = multiply_spanning(b, a);
        let (lhs, rhs, lhs_elem, rhs_elem) = if deg >= 0 {
            (&ab, &ba, (a, b), (b, a))
        } else {
            (&ba, &ab, (b, a), (a, b))
        };
        let scale = state.q.powi_exact(deg.unsigned_abs() as u32);
        let dev = (state_value(state, lhs) - scale.clone() * state_value(state, rhs)).abs();
        if dev > symbolic {
            symbolic = dev;
        }

        let Some(oracle) = oracle else { continue };
        let ol = oracle.product_value(lhs_elem.0, lhs_elem.1);
        let or = oracle.product_value(rhs_elem.0, rhs_elem.1);
        let dev = (ol.value.clone() - scale.clone() * or.value.clone()).abs().to_f64_lossy();
        let bound = (ol.error_bound.clone() + scale * or.error_bound.clone()).to_f64_lossy() + slack;
        track(&mut worst_kms, dev, bound);
        for (o, elem) in [(&ol, lhs), (&or, rhs)] {
            let dev = (o.value.clone() - state_value(state, elem)).abs().to_f64_lossy();
            track(&mut worst_agreement, dev, o.error_bound.to_f64_lossy() + slack);
        }
    }
    report.push("kms_symbolic", symbolic.to_f64_lossy(), tol::SYMBOLIC);
    if let Some(oracle) = oracle {
        report.depth = Some(oracle.depth());
        report.tail_bound = Some(oracle.tail_mass().to_f64_lossy());
        let (_, dev, bound) = worst_kms.unwrap_or((0.0, 0.0, slack));
        report.push("kms_oracle", dev, bound);
        let (_, dev, bound) = worst_agreement.unwrap_or((0.0, 0.0, slack));
        report.push("oracle_agreement", dev, bound);
    }
    report
}

fn track(worst: &mut Option<(f64, f64, f64)>, dev: f64, bound: f64) {
    let excess = dev - bound;
    if worst.is_none_or(|(e, _, _)| excess > e) {
        *worst = Some((excess, dev, bound));
    }
}

/// Internal consistency of a state descriptor: `Σm = 1`, `ε ≥ 0`, and
/// (except for ground states) `(I − qA)m = ε`.
pub fn state_consistency_check<T: Scalar>(graph: &DirectedGraph, state: &KmsState<T>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let total = state.m.sum();
    report.push("normalization", (total - T::one()).abs().to_f64_lossy(), tol::NORMALIZATION);
    let most_negative = state
        .epsilon
        .iter()
        .map(Scalar::to_f64_lossy)
        .fold(0.0f64, |acc, x| acc.max(-x));
    report.push("epsilon_nonnegative", most_negative, tol::SUBINVARIANCE);
    if state.kind != StateKind::Ground {
        let check = check_subinvariant(&graph.vertex_matrix(), &state.m, &state.q, tol::SUBINVARIANCE);
        let residual = check
            .slack
            .iter()
            .zip(state.epsilon.iter())
            .map(|(s, e)| (s.clone() - e.clone()).abs().to_f64_lossy())
            .fold(0.0f64, f64::max);
        report.push("resolvent", residual, tol::EIGEN_RESIDUAL);
    }
    report
}
