//! Which inverse temperatures carry KMS states, summarized per graph.

use serde::Serialize;

use crate::graph::DirectedGraph;
use crate::spectral::{classify_graph_spectrum, critical_rho, SpectralClass};

use super::critical::critical_state_with_sources;
use super::KmsError;

/// What is known at `β = ln ρ(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalStructure {
    /// `ρ(A) = 0`: there is no critical temperature.
    NoCriticalTemperature,
    /// Strongly connected: a unique KMS state on `TC*(E)`, and it factors
    /// through `C*(E)`.
    UniqueState,
    /// No sinks and `E∖H` strongly connected: a unique KMS state on `C*(E)`.
    UniqueOnCuntzKrieger,
    /// States exist (one for each subinvariant measure) but no
    /// parametrization is claimed.
    Exists,
}

/// What is known for `β < ln ρ(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BelowCritical {
    /// Every real `β` is above critical.
    Empty,
    /// Strongly connected: no KMS states.
    NoStates,
    /// Reducible graphs can carry states below `ln ρ(A)`; not analysed.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaRangeReport {
    pub rho: f64,
    pub classification: SpectralClass,
    /// `ln ρ(A)`; `None` stands for `−∞`.
    pub critical_beta: Option<f64>,
    pub all_beta_admissible: bool,
    /// Dimension `|E^0| − 1` of the simplex of KMS_β states of `TC*(E)` above critical.
    pub toeplitz_dim: usize,
    /// Dimension `|S|` of the simplex of KMS_β states of `C*(E)` above critical, `S` the sources.
    pub ck_dim: usize,
    pub critical: CriticalStructure,
    pub below_critical: BelowCritical,
    pub summary: String,
}

pub fn beta_range_report(graph: &DirectedGraph) -> Result<BetaRangeReport, KmsError> {
    let classification = classify_graph_spectrum(graph);
    let rho = critical_rho(graph)?;
    let toeplitz_dim = graph.vertex_count() - 1;
    let ck_dim = graph.sources().len();
    if classification == SpectralClass::Zero {
        return Ok(BetaRangeReport {
            rho,
            classification,
            critical_beta: None,
            all_beta_admissible: true,
            toeplitz_dim,
            ck_dim,
            critical: CriticalStructure::NoCriticalTemperature,
            below_critical: BelowCritical::Empty,
            summary: format!("all β admissible; dim = {toeplitz_dim}"),
        });
    }
    let critical_beta = rho.ln();
    let (critical, below_critical) = if graph.strongly_connected() {
        (CriticalStructure::UniqueState, BelowCritical::NoStates)
    } else if critical_state_with_sources::<f64>(graph).is_ok() {
        (CriticalStructure::UniqueOnCuntzKrieger, BelowCritical::Undetermined)
    } else {
        (CriticalStructure::Exists, BelowCritical::Undetermined)
    };
    let beta = format_beta(critical_beta);
    let at = match critical {
        CriticalStructure::UniqueState if classification == SpectralClass::One => {
            format!("unique KMS_{beta} state, also the unique one on C*(E)")
        }
        CriticalStructure::UniqueState => format!("unique state at {beta}"),
        CriticalStructure::UniqueOnCuntzKrieger => format!("unique KMS_{beta} state on C*(E)"),
        _ => format!("states exist at {beta}"),
    };
    let below = match below_critical {
        BelowCritical::NoStates => "none below",
        _ => "below undetermined",
    };
    Ok(BetaRangeReport {
        rho,
        classification,
        critical_beta: Some(critical_beta),
        all_beta_admissible: false,
        toeplitz_dim,
        ck_dim,
        critical,
        below_critical,
        summary: format!("β > {beta}; {at}; {below}"),
    })
}

fn format_beta(beta: f64) -> String {
    if beta == 0.0 {
        "0".to_string()
    } else {
        format!("{beta:.6}")
    }
}
