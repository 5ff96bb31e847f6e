//! Symbolic spanning elements `s_μ s_ν*` of the Toeplitz algebra and their
//! product formula.

use thiserror::Error;

use crate::graph::{DirectedGraph, Path};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("s(mu) = {mu_source} differs from s(nu) = {nu_source}")]
    SourceMismatch { mu_source: usize, nu_source: usize },
}

/// `s_μ s_ν*` with `s(μ) = s(ν)`, or the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpanningElement {
    Zero,
    Pair { mu: Path, nu: Path },
}

impl SpanningElement {
    pub fn new(mu: Path, nu: Path) -> Result<Self, AlgebraError> {
        if mu.source() != nu.source() {
            return Err(AlgebraError::SourceMismatch {
                mu_source: mu.source(),
                nu_source: nu.source(),
            });
        }
        Ok(SpanningElement::Pair { mu, nu })
    }

    /// The vertex projection `p_v = s_v s_v*`.
    pub fn vertex(v: usize) -> Self {
        SpanningElement::Pair {
            mu: Path::vertex(v),
            nu: Path::vertex(v),
        }
    }

    /// `s_μ s_μ*`.
    pub fn range_projection(mu: Path) -> Self {
        SpanningElement::Pair {
            nu: mu.clone(),
            mu,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SpanningElement::Zero)
    }

    /// `|μ| − |ν|`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        match self {
            SpanningElement::Zero => None,
            SpanningElement::Pair { mu, nu } => Some(mu.len() as i64 - nu.len() as i64),
        }
    }

    /// `(s_μ s_ν*)* = s_ν s_μ*`.
    pub fn adjoint(&self) -> Self {
        match self {
            SpanningElement::Zero => SpanningElement::Zero,
            SpanningElement::Pair { mu, nu } => SpanningElement::Pair {
                mu: nu.clone(),
                nu: mu.clone(),
            },
        }
    }

    pub fn display(&self, graph: &DirectedGraph) -> String {
        match self {
            SpanningElement::Zero => "0".to_string(),
            SpanningElement::Pair { mu, nu } => {
                format!("s[{}] s[{}]*", mu.display(graph), nu.display(graph))
            }
        }
    }
}

/// Product formula:
///
/// ```text
/// (s_μ s_ν*)(s_α s_β*) = s_{μα′} s_β*   if α = να′
///                      = s_μ s_{βν′}*   if ν = αν′
///                      = 0              otherwise
/// ```
pub fn multiply_spanning(a: &SpanningElement, b: &SpanningElement) -> SpanningElement {
    let (SpanningElement::Pair { mu, nu }, SpanningElement::Pair { mu: alpha, nu: beta }) = (a, b)
    else {
        return SpanningElement::Zero;
    };
    if let Some(alpha_rest) = alpha.strip_prefix(nu) {
        let left = mu
            .concat(&alpha_rest)
            .expect("s(mu) = s(nu) = r(alpha')");
        return SpanningElement::Pair {
            mu: left,
            nu: beta.clone(),
        };
    }
    if let Some(nu_rest) = nu.strip_prefix(alpha) {
        let right = beta.concat(&nu_rest).expect("s(beta) = s(alpha) = r(nu')");
        return SpanningElement::Pair {
            mu: mu.clone(),
            nu: right,
        };
    }
    SpanningElement::Zero
}

/// Every spanning element `(μ, ν)` with `|μ|, |ν| ≤ max_len`, in a fixed order.
pub fn spanning_elements(graph: &DirectedGraph, max_len: usize) -> Vec<SpanningElement> {
    let paths = graph.paths_up_to(max_len);
    let mut by_source: Vec<Vec<&Path>> = vec![Vec::new(); graph.vertex_count()];
    for p in &paths {
        by_source[p.source()].push(p);
    }
    let mut out = Vec::new();
    for group in &by_source {
        for mu in group {
            for nu in group {
                out.push(SpanningElement::Pair {
                    mu: (*mu).clone(),
                    nu: (*nu).clone(),
                });
            }
        }
    }
    out
}
