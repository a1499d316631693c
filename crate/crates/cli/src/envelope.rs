//! Machine-readable output envelope and number formatting.

use serde_json::{json, Map, Value};

/// Command status reported in the envelope and mapped to the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
    Unconverged,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::Unconverged => "unconverged",
            Status::Error => "error",
        }
    }
}

/// Wrap a command result with its parameters and status; all floats are
/// rounded to 15 significant digits for reproducible output.
pub fn envelope(command: &str, params: Value, result: Value, status: Status) -> Value {
    let mut out = json!({
        "command": command,
        "params": params,
        "result": result,
        "status": status.as_str(),
    });
    round_floats(&mut out);
    out
}

/// Round every non-integer JSON number in place to 15 significant digits.
pub fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round15(f)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// 15-significant-digit decimal string for CSV cells.
pub fn fmt15(x: f64) -> String {
    format!("{}", round15(x))
}

/// Convenience for building params maps.
pub fn params_object(entries: &[(&str, Value)]) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert((*k).to_string(), v.clone());
    }
    Value::Object(map)
}
