//! Deterministic JSON rendering: floats rounded to 15 significant digits,
//! object keys sorted, non-finite values spelled as strings.

use serde_json::{Map, Value};

use crate::graph::DirectedGraph;
use crate::kms::KmsState;
use crate::scalar::Scalar;

/// Rounds to 15 significant digits; `-0.0` becomes `0.0`.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// A rounded JSON number, or `"inf"`, `"-inf"`, `"nan"`.
pub fn number(x: f64) -> Value {
    if x.is_nan() {
        Value::from("nan")
    } else if x == f64::INFINITY {
        Value::from("inf")
    } else if x == f64::NEG_INFINITY {
        Value::from("-inf")
    } else {
        serde_json::Number::from_f64(round15(x)).map_or(Value::Null, Value::Number)
    }
}

/// Renders a float for CSV cells with the same rounding.
pub fn csv_number(x: f64) -> String {
    match number(x) {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

/// `{vertex id: value}`.
pub fn vertex_map<T: Scalar>(graph: &DirectedGraph, values: &[T]) -> Value {
    let map: Map<String, Value> = graph
        .vertices()
        .iter()
        .zip(values)
        .map(|(v, x)| (v.to_string(), number(x.to_f64_lossy())))
        .collect();
    Value::Object(map)
}

/// `{"q", "beta", "m", "epsilon", "kind", "factors_through_ck"}`.
pub fn state_json<T: Scalar>(graph: &DirectedGraph, state: &KmsState<T>) -> Value {
    let mut map = Map::new();
    map.insert("q".into(), number(state.q.to_f64_lossy()));
    map.insert("beta".into(), number(state.beta()));
    map.insert("m".into(), vertex_map(graph, &state.m));
    map.insert("epsilon".into(), vertex_map(graph, &state.epsilon));
    map.insert("kind".into(), Value::from(state.kind.as_str()));
    map.insert("factors_through_ck".into(), Value::from(state.factors_through_ck));
    Value::Object(map)
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kms::StateKind;

    #[test]
    #[allow(clippy::approx_constant)]
    fn rounding() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(2f64.ln()), 0.693147180559945);
        assert_eq!(round15(-0.0), 0.0);
        assert_eq!(round15(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(number(f64::NEG_INFINITY), Value::from("-inf"));
        assert_eq!(csv_number(2.0), "2.0");
    }

    #[test]
    fn state_descriptor_keys_sorted() {
        let g = DirectedGraph::from_index_pairs(1, &[(0, 0)]).unwrap();
        let s = KmsState {
            q: 1.0,
            m: vec![1.0].into(),
            epsilon: vec![0.0].into(),
            kind: StateKind::Critical,
            factors_through_ck: true,
        };
        let text = serde_json::to_string(&state_json(&g, &s)).unwrap();
        assert_eq!(
            text,
            r#"{"beta":0.0,"epsilon":{"v0":0.0},"factors_through_ck":true,"kind":"Critical","m":{"v0":1.0},"q":1.0}"#
        );
    }
}
