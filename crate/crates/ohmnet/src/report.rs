//! Machine-readable experiment reports.
//!
//! A report is a JSON object with a versioned schema. Everything except the
//! wall time is the deterministic "body": re-running an experiment with the
//! same config and seed must reproduce the body byte for byte (serde_json
//! orders object keys, so serialization is canonical).

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub wall_time_s: f64,
}

impl ExperimentReport {
    pub fn new(command: &str, config: Value, results: Value, wall_time_s: f64) -> ExperimentReport {
        ExperimentReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            results,
            wall_time_s,
        }
    }

    /// The deterministic part of the report: everything but the wall time.
    pub fn body(&self) -> Value {
        json!({
            "schema": self.schema,
            "command": self.command,
            "config": self.config,
            "results": self.results,
        })
    }

    pub fn body_string(&self) -> String {
        serde_json::to_string_pretty(&self.body()).expect("report body serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Remove the wall-time field from a parsed report, for body comparisons.
pub fn strip_wall_time(mut report: Value) -> Value {
    if let Some(obj) = report.as_object_mut() {
        obj.remove("wall_time_s");
    }
    report
}

/// Flatten a JSON value into CSV-friendly `(column, value)` pairs; nested
/// objects join path segments with `.`, arrays index with `[i]`.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => out.push((prefix.to_string(), n.to_string())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Render rows of JSON objects as CSV, one line per row, with a header built
/// from the union of flattened keys (in first-seen order).
pub fn rows_to_csv(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    let mut flat_rows: Vec<Map<String, Value>> = Vec::new();
    for row in rows {
        let mut pairs = Vec::new();
        flatten("", row, &mut pairs);
        let mut map = Map::new();
        for (k, v) in pairs {
            if !columns.contains(&k) {
                columns.push(k.clone());
            }
            map.insert(k, Value::String(v));
        }
        flat_rows.push(map);
    }
    let mut out = String::new();
    out.push_str(&columns.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in flat_rows {
        let line: Vec<String> = columns
            .iter()
            .map(|c| row.get(c).and_then(|v| v.as_str()).map(csv_escape).unwrap_or_default())
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "fit needs at least two points");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        cov += (xi - mx) * (yi - my);
        var += (xi - mx) * (xi - mx);
    }
    let slope = cov / var;
    (slope, my - slope * mx)
}

/// Slope of `log2 y` against `log2 x`: the fitted power-law exponent.
pub fn log_log_exponent(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.log2()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.log2()).collect();
    linear_fit(&lx, &ly).0
}
