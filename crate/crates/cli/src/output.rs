//! Deterministic rendering of command results.

use serde::Serialize;
use serde_json::Value;

/// Significant digits kept for every float in emitted JSON.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`]; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds every non-integer number in place.
pub fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(xs) => xs.iter_mut().for_each(normalize),
        Value::Object(m) => m.values_mut().for_each(normalize),
        _ => {}
    }
}

/// Normalised JSON value of a serialisable report.
pub fn to_value(x: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(x).expect("reports serialize");
    normalize(&mut v);
    v
}

/// Pretty JSON with a trailing newline.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Two-column `key  value` table of the leaves of a JSON document.
pub fn to_text(json: &str) -> String {
    let v: Value = serde_json::from_str(json).expect("emitted JSON parses");
    let mut rows = Vec::new();
    flatten("", &v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, x)| format!("{k:width$}  {x}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding_is_stable() {
        assert_eq!(round_sig(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_sig(1.0000000000004), 1.0);
        assert_eq!(round_sig(-0.99999999999996), -1.0);
        assert_eq!(round_sig(1.234567890123456e-20), 1.23456789012e-20);
        assert_eq!(round_sig(round_sig(std::f64::consts::PI)), round_sig(std::f64::consts::PI));
    }

    #[test]
    fn integers_are_untouched_and_text_flattens() {
        let mut v = json!({"n": 3, "x": {"y": [0.1, -0.0]}, "s": "U"});
        normalize(&mut v);
        assert_eq!(v, json!({"n": 3, "x": {"y": [0.1, 0.0]}, "s": "U"}));
        assert_eq!(to_text(&to_json(&v)), "n      3\nx.y.0  0.1\nx.y.1  0.0\ns      U\n");
    }
}
