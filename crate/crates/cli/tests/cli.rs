use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn embedlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_embedlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn manifest(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = embedlab(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("manifest json")
}

fn number(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn analyze_catalog_entries() {
    let rot = manifest(&["analyze", "rot/1"]);
    assert_eq!(rot["command"], "analyze");
    assert!((number(&rot["results"]["leakage"]["delta"]) - 0.311278124459).abs() < 1e-9);
    let ot = manifest(&["analyze", "primitive://ot/1"]);
    assert!((number(&ot["results"]["leakage"]["delta"]) - 0.5).abs() < 1e-9);
    assert_eq!(ot["results"]["triviality"]["trivial"], false);
}

#[test]
fn analyze_independent_file_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("indep.json");
    std::fs::write(&path, r#"{"x": ["0", "1"], "y": ["0", "1"], "p": [[0.25, 0.25], [0.25, 0.25]]}"#).unwrap();
    let m = manifest(&["analyze", path.to_str().unwrap()]);
    assert_eq!(m["results"]["triviality"]["trivial"], true);
    assert!(number(&m["results"]["leakage"]["delta"]).abs() < 1e-9);
    let min = manifest(&["minimize", path.to_str().unwrap()]);
    assert!(number(&min["results"]["result"]["best_delta"]).abs() < 1e-6);
}

#[test]
fn analyze_with_free_coordinate() {
    let m = manifest(&["analyze", "ot/1", "--phases", "3.0"]);
    let omega: f64 = 3.0;
    let spectrum = [
        (1.0 + (omega / 4.0).cos()) / 4.0,
        (1.0 - (omega / 4.0).cos()) / 4.0,
        (1.0 + (omega / 4.0).sin()) / 4.0,
        (1.0 - (omega / 4.0).sin()) / 4.0,
    ];
    let s: f64 = spectrum.iter().map(|p| -p * p.log2()).sum();
    assert!((number(&m["results"]["leakage"]["delta"]) - (s - 1.0)).abs() < 1e-9);
}

#[test]
fn minimize_matches_known_minima() {
    let ot = manifest(&["minimize", "ot/1", "--restarts", "16", "--seed", "7"]);
    assert!((number(&ot["results"]["result"]["best_delta"]) - 0.5).abs() < 1e-4);
    assert_eq!(ot["results"]["result"]["per_restart"].as_array().unwrap().len(), 16);
    let sand = manifest(&["minimize", "sand", "--seed", "7"]);
    assert!((number(&sand["results"]["result"]["best_delta"]) - 0.5).abs() < 1e-3);
}

#[test]
fn manifest_replays_identically() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("run.json");
    let out = embedlab(&["minimize", "ot/2", "--restarts", "4", "--seed", "3", "--manifest", saved.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&saved).unwrap()).unwrap();
    let args: Vec<String> = serde_json::from_value(first["arguments"].clone()).unwrap();
    let again = embedlab(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&again), 0);
    let second: Value = serde_json::from_str(&std::fs::read_to_string(&saved).unwrap()).unwrap();
    assert_eq!(first["results"], second["results"]);
    assert_eq!(first["seed"], 3);
}

#[test]
fn table1_csv_rows() {
    let out = embedlab(&["table1", "--max-r", "4"]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["row", "parameter", "reference", "computed", "abs_diff", "numeric", "note"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let find = |row: &str, param: &str| {
        rows.iter()
            .find(|r| &r[0] == row && &r[1] == param)
            .unwrap_or_else(|| panic!("missing {row} {param}"))
            .clone()
    };
    let rot1 = find("rot", "r=1");
    assert!((rot1[3].parse::<f64>().unwrap() - 0.311278).abs() < 1e-6);
    assert!(rot1[4].parse::<f64>().unwrap() < 1e-3);
    assert_eq!(find("ot", "r=1")[3].parse::<f64>().unwrap(), 0.5);
    let otp0 = find("otp", "p=0")[3].parse::<f64>().unwrap();
    assert!((otp0 - 1.0 / (128.0 * std::f64::consts::LN_2)).abs() < 1e-9);
    assert_eq!(rows.iter().filter(|r| &r[0] == "rot").count(), 4);
}

#[test]
fn attack_table() {
    let m = manifest(&["attack", "ot/1"]);
    let attacks = m["results"]["attacks"].as_array().unwrap();
    assert_eq!(attacks.len(), 2);
    for a in attacks {
        let o = &a["outcome"];
        assert!((number(&o["conclusive_probability"]) - 0.5).abs() < 1e-12);
        assert!((number(&o["conditional_correctness"]) - 1.0).abs() < 1e-12);
    }
    let text = String::from_utf8(embedlab(&["attack"]).stdout).unwrap();
    assert!(text.contains("bob: conclusive 0.5"));
    let wrong = embedlab(&["attack", "rot/1"]);
    assert_eq!(code(&wrong), 3);
}

#[test]
fn check_suites_are_deterministic() {
    let a = manifest(&["check", "symmetry"]);
    let props = a["results"]["suites"][0]["properties"].as_array().unwrap();
    let sym = props.iter().find(|p| p["name"] == "directed_leakages_agree").unwrap();
    assert_eq!(sym["passed"], 100);
    let holevo = manifest(&["check", "holevo"]);
    let dom = &holevo["results"]["suites"][0]["properties"][0];
    assert_eq!(dom["passed"], 200);
    let all1 = manifest(&["check", "all", "--seed", "7"]);
    let all2 = manifest(&["check", "all", "--seed", "7"]);
    assert_eq!(all1["results"], all2["results"]);
    assert_eq!(all1["results"]["passed"], true);
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = embedlab(&["export", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    for name in ["rot_1.json", "ot_1.json", "sand.json", "indep.json", "equal.json"] {
        let path = dir.path().join(name);
        assert!(Path::new(&path).exists(), "{name}");
        let m = manifest(&["analyze", path.to_str().unwrap()]);
        assert!(m["results"]["leakage"]["delta"].is_number());
    }
    let rot = manifest(&["analyze", dir.path().join("rot_1.json").to_str().unwrap()]);
    assert!((number(&rot["results"]["leakage"]["delta"]) - 0.311278124459).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&embedlab(&["analyze", "nonsense"])), 2);
    assert_eq!(code(&embedlab(&["check", "nosuchsuite"])), 2);
    assert_eq!(code(&embedlab(&["frobnicate"])), 2);
    assert_eq!(code(&embedlab(&["analyze", "rot/99"])), 3);
    assert_eq!(code(&embedlab(&["analyze", "ot/1", "--phases", "1,2"])), 3);
    assert_eq!(code(&embedlab(&["minimize", "ot/4", "--restarts", "1"])), 4);

    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{not json").unwrap();
    assert_eq!(code(&embedlab(&["analyze", bad_json.to_str().unwrap()])), 2);
    let unnormalized = dir.path().join("unnormalized.json");
    std::fs::write(&unnormalized, r#"{"x": ["0"], "y": ["0", "1"], "p": [[0.5, 0.6]]}"#).unwrap();
    assert_eq!(code(&embedlab(&["analyze", unnormalized.to_str().unwrap()])), 3);
}

#[test]
fn function_table_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("and.json");
    // Deterministic AND: Alice and Bob both learn a·b.
    let mut cells = Vec::new();
    for a in 0..2 {
        let mut row = Vec::new();
        for b in 0..2 {
            let w = (a & b).to_string();
            row.push(serde_json::json!([{"w": w, "z": w, "prob": 1.0}]));
        }
        cells.push(row);
    }
    let table = serde_json::json!({"a": ["0", "1"], "b": ["0", "1"], "cells": cells});
    std::fs::write(&path, table.to_string()).unwrap();
    let m = manifest(&["analyze", path.to_str().unwrap()]);
    // Labels "a,w": (0,0), (1,0), (1,1).
    assert_eq!(m["results"]["nx"], 3);
    assert_eq!(m["results"]["ny"], 3);
    assert!(number(&m["results"]["leakage"]["delta"]) >= -1e-12);
}
