//! Loading graphs and vertex vectors from the command line.

use std::fs;
use std::path::Path;

use kmsgraph::kms::y_vector;
use kmsgraph::DirectedGraph;
use serde_json::Value;

use crate::CliError;

pub fn load_graph(path: &Path) -> Result<DirectedGraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    kmsgraph::parse_graph(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// How a `--epsilon extreme:<v>` spec is turned into a vector.
#[derive(Debug, Clone, Copy)]
pub enum Extreme {
    /// `δ_v / y_v`, an extreme point of `Σ_β`.
    Simplex(f64),
    /// `δ_v`.
    PointMass,
}

/// Parses `SPEC`: inline JSON (`{"v": x, ...}` or `[x, ...]`), `extreme:<v>`,
/// or a path to a file holding the JSON form. Vertices missing from an
/// object are zero.
pub fn parse_vector(graph: &DirectedGraph, spec: &str, extreme: Extreme) -> Result<Vec<f64>, CliError> {
    let spec = spec.trim();
    if let Some(name) = spec.strip_prefix("extreme:") {
        let v = graph
            .vertex_by_name(name)
            .map_err(|e| CliError::Parse(format!("--epsilon: {e}")))?;
        let mut out = vec![0.0; graph.vertex_count()];
        out[v] = match extreme {
            Extreme::PointMass => 1.0,
            Extreme::Simplex(q) => 1.0 / y_vector(graph, &q)?[v],
        };
        return Ok(out);
    }
    let text = if spec.starts_with('{') || spec.starts_with('[') {
        spec.to_string()
    } else {
        fs::read_to_string(spec).map_err(|e| CliError::Parse(format!("cannot read {spec}: {e}")))?
    };
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("--epsilon: {e}")))?;
    vector_from_json(graph, &value)
}

fn vector_from_json(graph: &DirectedGraph, value: &Value) -> Result<Vec<f64>, CliError> {
    let number = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| CliError::Parse(format!("--epsilon: {x} is not a number")))
    };
    match value {
        Value::Array(items) => {
            if items.len() != graph.vertex_count() {
                return Err(CliError::Parse(format!(
                    "--epsilon: expected {} entries, got {}",
                    graph.vertex_count(),
                    items.len()
                )));
            }
            items.iter().map(number).collect()
        }
        Value::Object(map) => {
            let mut out = vec![0.0; graph.vertex_count()];
            for (name, x) in map {
                let v = graph
                    .vertex_by_name(name)
                    .map_err(|e| CliError::Parse(format!("--epsilon: {e}")))?;
                out[v] = number(x)?;
            }
            Ok(out)
        }
        _ => Err(CliError::Parse("--epsilon: expected a JSON object or array".into())),
    }
}
