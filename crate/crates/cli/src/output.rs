//! Run manifests, number formatting and output sinks.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::failure::Failure;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One record per invocation. `arguments` is the full argument list after
/// the program name, so a run can be repeated from its manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    pub results: Value,
}

/// Rounds to `digits` significant digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits - 1, v).parse().unwrap_or(v)
}

/// Rounds every float in `v` to 12 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN), 12);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Human form: 6 significant digits.
pub fn human(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let r = round_sig(v, 6);
    if r == 0.0 {
        "0".into()
    } else if r.abs() >= 1e-4 && r.abs() < 1e7 {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// CSV form: 12 significant digits.
pub fn csv_num(v: f64) -> String {
    let r = round_sig(v, 12);
    if r == 0.0 || !r.is_finite() || (r.abs() >= 1e-4 && r.abs() < 1e15) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn csv_opt(v: Option<f64>) -> String {
    v.map(csv_num).unwrap_or_default()
}

/// Where the main output goes.
pub struct Sink {
    pub out: Option<PathBuf>,
}

impl Sink {
    pub fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Validation(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Writes rows with a fixed header.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Validation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Validation(e.to_string()))
}

/// Left-aligned columns separated by two spaces.
pub fn table_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}
