//! Primitive ids and primitive files.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use embedlab::primitives::PrimitiveSpec;
use embedlab::probdist::{randomize_function, Alphabet, FunctionTable, JointDistribution};

use crate::failure::Failure;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJoint {
    x: Vec<String>,
    y: Vec<String>,
    p: Vec<Vec<f64>>,
}

/// A loaded primitive and the name it is reported under.
pub struct Loaded {
    pub name: String,
    pub dist: JointDistribution,
}

/// Reads `arg` as a file when one exists at that path, otherwise as a
/// catalog id such as `rot/3` or `primitive://otp/0.1`.
pub fn load(arg: &str) -> Result<Loaded, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{arg}: {e}")))?;
        let dist = parse_file(&text).map_err(|f| f.context(arg))?;
        return Ok(Loaded { name: arg.to_string(), dist });
    }
    let kind = arg.parse().map_err(|e| Failure::Parse(format!("{e}")))?;
    let spec = PrimitiveSpec::build(kind)?;
    Ok(Loaded { name: spec.id(), dist: spec.dist })
}

/// Joint-distribution files `{"x", "y", "p"}` or function tables
/// `{"a", "b", "cells"}`.
pub fn parse_file(text: &str) -> Result<JointDistribution, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))?;
    if value.get("cells").is_some() {
        let table: FunctionTable = serde_json::from_value(value).map_err(|e| Failure::Parse(e.to_string()))?;
        return Ok(randomize_function(&table)?);
    }
    let raw: RawJoint = serde_json::from_value(value).map_err(|e| Failure::Parse(e.to_string()))?;
    Ok(JointDistribution::new(Alphabet::new(raw.x)?, Alphabet::new(raw.y)?, raw.p)?)
}

/// Comma-separated angles, optionally wrapped in brackets.
pub fn parse_phases(text: &str) -> Result<Vec<f64>, Failure> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Parse(format!("bad phase {t:?}")))
        })
        .collect()
}
