//! Subcommand bodies; each returns the rendered output.

use std::collections::BTreeSet;

use kmsgraph::algebra::spanning_elements;
use kmsgraph::graph::strongly_connected_components;
use kmsgraph::kms::{
    beta_range_report, ck_simplex_extreme_points, critical_state_from_measure, critical_state_irreducible,
    critical_state_with_sources, ground_state, normalize_ray, simplex_extreme_points, toeplitz_state, y_vector,
    Resolvent,
};
use kmsgraph::oracle::{check_tck_relations, kms_condition_check, max_basis_from_env, state_consistency_check};
use kmsgraph::report::{csv_number, number, state_json, to_pretty, vertex_map};
use kmsgraph::spectral::{classify_graph_spectrum, critical_rho, SpectralClass};
use kmsgraph::{DirectedGraph, KmsError, Oracle};
use serde_json::{json, Map, Value};

use crate::input::{parse_vector, Extreme};
use crate::{CliError, Format};

fn names(graph: &DirectedGraph, set: &BTreeSet<usize>) -> Value {
    Value::from(set.iter().map(|&v| graph.vertex(v).to_string()).collect::<Vec<_>>())
}

/// Rounds every float in a serialized value.
fn rounded(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => number(n.as_f64().expect("f64")),
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

fn critical_beta(class: SpectralClass, rho: f64) -> Value {
    if class == SpectralClass::Zero {
        Value::from("-inf")
    } else {
        number(rho.ln())
    }
}

pub fn analyze(graph: &DirectedGraph) -> Result<String, CliError> {
    let chain = graph.source_saturation();
    let blocks = chain.block_decomposition(graph).map_err(KmsError::from)?;
    let [outer, coupling, hull] = blocks.shapes();
    let class = classify_graph_spectrum(graph);
    let rho = critical_rho(graph).map_err(KmsError::from)?;
    let range = beta_range_report(graph)?;
    let mut range_json = rounded(serde_json::to_value(&range).expect("report serializes"));
    range_json["critical_beta"] = critical_beta(class, rho);

    let out = json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "sources": names(graph, &graph.sources()),
        "sinks": names(graph, &graph.sinks()),
        "scc_count": strongly_connected_components(graph).len(),
        "strongly_connected": graph.strongly_connected(),
        "saturation": chain.levels().iter().map(|l| names(graph, l)).collect::<Vec<_>>(),
        "saturation_hull": names(graph, chain.hull()),
        "block_shapes": {
            "outer": [outer.0, outer.1],
            "coupling": [coupling.0, coupling.1],
            "hull": [hull.0, hull.1],
        },
        "rho": number(rho),
        "classification": serde_json::to_value(class).expect("class serializes"),
        "critical_beta": critical_beta(class, rho),
        "beta_range": range_json,
    });
    Ok(to_pretty(&out))
}

pub fn simplex(graph: &DirectedGraph, q: f64, format: Format) -> Result<String, CliError> {
    let y = y_vector(graph, &q)?;
    let points = simplex_extreme_points(graph, &q)?;
    let ck = ck_simplex_extreme_points(graph, &q)?;
    let sources = graph.sources();
    let ids: Vec<String> = graph.vertices().iter().map(ToString::to_string).collect();

    if format == Format::Csv {
        let mut out = format!("row,vertex,factors_through_ck,{}\n", ids.join(","));
        let cells = |v: &[f64]| v.iter().map(|x| csv_number(*x)).collect::<Vec<_>>().join(",");
        out.push_str(&format!("y,,,{}\n", cells(&y)));
        for (u, p) in points.iter().enumerate() {
            out.push_str(&format!("extreme,{},{},{}\n", ids[u], sources.contains(&u), cells(p)));
        }
        return Ok(out);
    }

    let extreme = |u: usize, p: &[f64]| {
        json!({ "vertex": ids[u], "epsilon": vertex_map(graph, p) })
    };
    let out = json!({
        "q": number(q),
        "beta": number(-q.ln()),
        "y": vertex_map(graph, &y),
        "toeplitz_extreme_points": points.iter().enumerate().map(|(u, p)| extreme(u, p)).collect::<Vec<_>>(),
        "ck_extreme_points": sources.iter().zip(&ck).map(|(&u, p)| extreme(u, p)).collect::<Vec<_>>(),
        "toeplitz_dim": points.len() - 1,
        "ck_dim": ck.len(),
    });
    Ok(to_pretty(&out))
}

pub fn state(graph: &DirectedGraph, q: f64, spec: &str, normalize: bool, tolerance: f64) -> Result<String, CliError> {
    let mut epsilon = parse_vector(graph, spec, Extreme::Simplex(q))?;
    if normalize {
        epsilon = normalize_ray(graph, &q, &epsilon)?.into_inner();
    }
    let s = toeplitz_state(graph, &q, &epsilon, tolerance)?;
    Ok(to_pretty(&state_json(graph, &s)))
}

pub fn critical(graph: &DirectedGraph, measure: Option<&str>) -> Result<String, CliError> {
    let s = match measure {
        Some(spec) => {
            let m = parse_vector(graph, spec, Extreme::PointMass)?;
            critical_state_from_measure(graph, &m)?
        }
        None if graph.strongly_connected() => critical_state_irreducible::<f64>(graph)?,
        None => critical_state_with_sources::<f64>(graph)?,
    };
    Ok(to_pretty(&state_json(graph, &s)))
}

pub fn ground(graph: &DirectedGraph, spec: &str, tolerance: f64) -> Result<String, CliError> {
    let epsilon = parse_vector(graph, spec, Extreme::PointMass)?;
    let s = ground_state(graph, &epsilon, tolerance)?;
    Ok(to_pretty(&state_json(graph, &s)))
}

pub struct VerifyRequest<'a> {
    pub q: f64,
    pub epsilon: &'a str,
    pub depth: Option<usize>,
    pub max_len: usize,
    pub tol: f64,
}

pub fn verify(graph: &DirectedGraph, req: &VerifyRequest<'_>) -> Result<String, CliError> {
    let epsilon = parse_vector(graph, req.epsilon, Extreme::Simplex(req.q))?;
    let s = toeplitz_state(graph, &req.q, &epsilon, req.tol)?;
    let cap = max_basis_from_env()?;
    // products of two sampled elements lengthen paths by up to 2 · max_len
    let oracle = match req.depth {
        Some(n) => Oracle::new(graph, &req.q, &epsilon, n, cap)?,
        None => Oracle::auto(graph, &req.q, &epsilon, 2 * req.max_len, cap)?,
    };
    let elements = spanning_elements(graph, req.max_len);
    let sample: Vec<_> = elements
        .iter()
        .flat_map(|a| elements.iter().map(move |b| (a.clone(), b.clone())))
        .collect();

    let mut report = state_consistency_check(graph, &s);
    report.merge(check_tck_relations(graph, oracle.rep()));
    report.merge(kms_condition_check(&s, Some(&oracle), &sample));

    let out = json!({
        "state": state_json(graph, &s),
        "report": rounded(serde_json::to_value(&report).expect("report serializes")),
        "sample_pairs": sample.len(),
        "basis_size": oracle.rep().dim(),
    });
    let text = to_pretty(&out);
    if report.passed {
        Ok(text)
    } else {
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(CliError::Verification {
            failed: failed.join(", "),
            output: text,
        })
    }
}

pub fn sweep(graph: &DirectedGraph, betas: &[f64], ray: Option<&str>, format: Format) -> Result<String, CliError> {
    let n = graph.vertex_count();
    let direction = match ray {
        Some(spec) => parse_vector(graph, spec, Extreme::PointMass)?,
        None => vec![1.0; n],
    };
    if direction.iter().any(|x| *x < 0.0) || direction.iter().all(|x| *x == 0.0) {
        return Err(KmsError::NotNormalized {
            what: "ray",
            value: direction.iter().sum(),
        }
        .into());
    }
    let ids: Vec<String> = graph.vertices().iter().map(ToString::to_string).collect();
    let toeplitz_dim = n - 1;
    let ck_dim = graph.sources().len();

    let mut rows = Vec::new();
    for &beta in betas {
        let q = (-beta).exp();
        let row = match Resolvent::new(graph, &q) {
            Ok(res) => {
                let epsilon = normalize_ray(graph, &q, &direction)?;
                let m = res.measure(&epsilon)?;
                Some((res.y(), m))
            }
            Err(KmsError::Inadmissible { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        rows.push((beta, q, row));
    }

    if format == Format::Csv {
        let mut header = vec!["beta".to_string(), "q".into(), "status".into()];
        header.extend(ids.iter().map(|v| format!("y_{v}")));
        header.extend(ids.iter().map(|v| format!("m_{v}")));
        header.extend(["toeplitz_dim".into(), "ck_dim".into()]);
        let mut out = header.join(",") + "\n";
        for (beta, q, row) in &rows {
            let mut cells = vec![csv_number(*beta), csv_number(*q)];
            match row {
                Some((y, m)) => {
                    cells.push("ok".into());
                    cells.extend(y.iter().chain(m.iter()).map(|x| csv_number(*x)));
                    cells.extend([toeplitz_dim.to_string(), ck_dim.to_string()]);
                }
                None => {
                    cells.push("subcritical".into());
                    cells.extend(std::iter::repeat_n(String::new(), 2 * n + 2));
                }
            }
            out.push_str(&(cells.join(",") + "\n"));
        }
        return Ok(out);
    }

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(beta, q, row)| {
            let mut obj = Map::new();
            obj.insert("beta".into(), number(*beta));
            obj.insert("q".into(), number(*q));
            match row {
                Some((y, m)) => {
                    obj.insert("status".into(), Value::from("ok"));
                    obj.insert("y".into(), vertex_map(graph, y));
                    obj.insert("m".into(), vertex_map(graph, m));
                    obj.insert("toeplitz_dim".into(), Value::from(toeplitz_dim));
                    obj.insert("ck_dim".into(), Value::from(ck_dim));
                }
                None => {
                    obj.insert("status".into(), Value::from("subcritical"));
                }
            }
            Value::Object(obj)
        })
        .collect();
    Ok(to_pretty(&Value::Array(json_rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_walks_nested_values() {
        let v = rounded(json!({"a": [0.1 + 0.2, {"b": 1.0 / 3.0}], "c": 2}));
        assert_eq!(v.to_string(), r#"{"a":[0.3,{"b":0.333333333333333}],"c":2}"#);
    }

    #[test]
    fn critical_beta_strings() {
        assert_eq!(critical_beta(SpectralClass::Zero, 0.0), Value::from("-inf"));
        assert_eq!(critical_beta(SpectralClass::One, 1.0), json!(0.0));
    }
}
