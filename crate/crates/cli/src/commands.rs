use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use embedlab::attacks::{alice_choice_povm, bob_xor_povm, choice_bit, run_povm_attack, xor_of_bits, AttackOutcome, Side};
use embedlab::embeddings::{
    build_regular, canonical, free_phase_coordinates, leakage_regular, strict_correctness_check, EmbeddingState,
    LeakageReport, PhaseAssignment, StrictnessReport,
};
use embedlab::optimize::{minimize_leakage, OptimizerConfig, OptimizerResult};
use embedlab::primitives::{
    catalog, make_ot, make_otp, make_rot, make_sand, ot_entropy_closed, otp_lower_bound, rot_leakage_closed,
    PrimitiveSpec, OTP_BOUND_THRESHOLD,
};
use embedlab::probdist::{
    conditional_entropy, conditional_entropy_x_given_y, connected_components, dependent_part, dependent_part_of_y,
    entropy_x, entropy_y, is_trivial, mutual_information, JointDistribution, TrivialityReport,
};
use embedlab::suites::{run_all, run_suite, SuiteReport};

use crate::failure::Failure;
use crate::input::{load, parse_phases};
use crate::output::{csv_num, csv_opt, human, table_text};

/// Everything a command produces, in each output form.
pub struct Report {
    pub results: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: String,
    /// Set when a checked property failed.
    pub failed: Option<String>,
}

impl Report {
    fn new(results: impl Serialize, csv_header: Vec<&'static str>, csv_rows: Vec<Vec<String>>, text: String) -> Self {
        Self {
            results: serde_json::to_value(results).expect("reports serialize"),
            csv_header,
            csv_rows,
            text,
            failed: None,
        }
    }
}

fn key_value(pairs: &[(&str, String)]) -> (Vec<Vec<String>>, String) {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    let text = table_text(&["quantity", "value"], &rows);
    (rows, text)
}

#[derive(Serialize)]
struct Analysis {
    primitive: String,
    nx: usize,
    ny: usize,
    h_x: f64,
    h_y: f64,
    mutual_information: f64,
    h_y_given_x: f64,
    h_x_given_y: f64,
    triviality: TrivialityReport,
    dependent_classes_x: usize,
    dependent_classes_y: usize,
    components: usize,
    component_weights: Vec<f64>,
    free_coordinates: usize,
    phases: PhaseAssignment,
    leakage: LeakageReport,
    strictness: StrictnessReport,
}

/// Phases given either for every support pair or as free coordinates.
fn phases_for(p: &JointDistribution, given: Option<&str>) -> Result<PhaseAssignment, Failure> {
    let Some(text) = given else {
        return Ok(PhaseAssignment::zeros(p));
    };
    let values = parse_phases(text)?;
    let free = free_phase_coordinates(p);
    if values.len() == free.count() && values.len() != p.support().len() {
        return Ok(free.embed(&values)?);
    }
    Ok(PhaseAssignment::from_vec(p, values)?)
}

pub fn analyze(input: &str, phases: Option<&str>, tol: f64) -> Result<Report, Failure> {
    let loaded = load(input)?;
    let p = &loaded.dist;
    let theta = phases_for(p, phases)?;
    let e = build_regular(p, &theta)?;
    let leakage = leakage_regular(&e)?;
    let strictness = strict_correctness_check(&EmbeddingState::from_regular(&e), tol)?;
    let comps = connected_components(p);
    let a = Analysis {
        primitive: loaded.name,
        nx: p.nx(),
        ny: p.ny(),
        h_x: entropy_x(p),
        h_y: entropy_y(p),
        mutual_information: mutual_information(p),
        h_y_given_x: conditional_entropy(p),
        h_x_given_y: conditional_entropy_x_given_y(p),
        triviality: is_trivial(p),
        dependent_classes_x: dependent_part(p).class_count(),
        dependent_classes_y: dependent_part_of_y(p).class_count(),
        components: comps.count(),
        component_weights: comps.weights.clone(),
        free_coordinates: free_phase_coordinates(p).count(),
        phases: theta,
        leakage,
        strictness,
    };
    let (rows, text) = key_value(&[
        ("primitive", a.primitive.clone()),
        ("nx", a.nx.to_string()),
        ("ny", a.ny.to_string()),
        ("H(X)", human(a.h_x)),
        ("H(Y)", human(a.h_y)),
        ("I(X;Y)", human(a.mutual_information)),
        ("H(Y|X)", human(a.h_y_given_x)),
        ("H(X|Y)", human(a.h_x_given_y)),
        ("trivial", a.triviality.trivial.to_string()),
        ("dependent_classes_x", a.dependent_classes_x.to_string()),
        ("dependent_classes_y", a.dependent_classes_y.to_string()),
        ("components", a.components.to_string()),
        ("free_coordinates", a.free_coordinates.to_string()),
        ("S(X;B)", human(a.leakage.s_x_bob)),
        ("S(A;Y)", human(a.leakage.s_alice_y)),
        ("delta", human(a.leakage.delta)),
        ("strictly_correct", a.strictness.passed.to_string()),
    ]);
    let csv_rows = rows
        .into_iter()
        .map(|mut r| {
            if let Ok(v) = r[1].parse::<f64>() {
                if r[1].contains('.') || r[1].contains('e') {
                    r[1] = csv_num(v);
                }
            }
            r
        })
        .collect();
    Ok(Report::new(&a, vec!["quantity", "value"], csv_rows, text))
}

pub fn minimize(input: &str, cfg: &OptimizerConfig) -> Result<Report, Failure> {
    let loaded = load(input)?;
    let result: OptimizerResult = minimize_leakage(&loaded.dist, cfg)?;
    let rows: Vec<Vec<String>> = result
        .per_restart
        .iter()
        .map(|t| {
            vec![
                t.index.to_string(),
                csv_num(t.final_delta),
                t.iterations.to_string(),
                t.converged.to_string(),
                join(&t.start),
                join(&t.final_coords),
            ]
        })
        .collect();
    let human_rows: Vec<Vec<String>> = result
        .per_restart
        .iter()
        .map(|t| vec![t.index.to_string(), human(t.final_delta), t.iterations.to_string(), t.converged.to_string()])
        .collect();
    let text = format!(
        "primitive     {}\nbest_delta    {}\nbest_restart  {}\ncoordinates   [{}]\n\n{}",
        loaded.name,
        human(result.best_delta),
        result.best_restart,
        result.best_coords.iter().map(|&c| human(c)).collect::<Vec<_>>().join(", "),
        table_text(&["restart", "delta", "iterations", "converged"], &human_rows)
    );
    let results = json!({
        "primitive": loaded.name,
        "config": cfg,
        "free_coordinates": result.best_coords.len(),
        "result": result,
    });
    Ok(Report::new(
        results,
        vec!["restart", "final_delta", "iterations", "converged", "start", "final_coords"],
        rows,
        text,
    ))
}

fn join(v: &[f64]) -> String {
    v.iter().map(|&x| csv_num(x)).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct Table1Row {
    row: String,
    parameter: String,
    reference: Option<f64>,
    computed: f64,
    abs_diff: Option<f64>,
    numeric: Option<f64>,
    note: String,
}

/// Largest `r` for which the ROT rows also carry the numeric eigensolver value.
const NUMERIC_ROT_MAX: u32 = 8;
/// Closed forms overflow past this.
const TABLE_ROT_MAX: u32 = 60;

pub fn table1(max_r: u32, cfg: &OptimizerConfig) -> Result<Report, Failure> {
    if !(1..=TABLE_ROT_MAX).contains(&max_r) {
        return Err(Failure::Validation(format!("--max-r must lie in 1..={TABLE_ROT_MAX}")));
    }
    let mut rows = Vec::new();
    for r in 1..=max_r {
        let closed = rot_leakage_closed(r).delta;
        let numeric = if r <= NUMERIC_ROT_MAX {
            Some(leakage_regular(&canonical(&make_rot(r)?.dist))?.delta)
        } else {
            None
        };
        let reference = (r == 1).then_some(0.311);
        rows.push(Table1Row {
            row: "rot".into(),
            parameter: format!("r={r}"),
            reference,
            computed: closed,
            abs_diff: reference.map(|v| (v - closed).abs()),
            numeric,
            note: "closed form; phase independent".into(),
        });
    }
    let ot_closed = ot_entropy_closed(0.0).s_aprime - mutual_information(&make_ot(1)?.dist);
    let ot_min = minimize_leakage(&make_ot(1)?.dist, cfg)?.best_delta;
    rows.push(Table1Row {
        row: "ot".into(),
        parameter: "r=1".into(),
        reference: Some(0.5),
        computed: ot_closed,
        abs_diff: Some((ot_closed - 0.5).abs()),
        numeric: Some(ot_min),
        note: "closed form at omega=0; numeric is the minimized leakage".into(),
    });
    let sand_min = minimize_leakage(&make_sand().dist, cfg)?.best_delta;
    rows.push(Table1Row {
        row: "sand".into(),
        parameter: String::new(),
        reference: Some(0.5),
        computed: sand_min,
        abs_diff: Some((sand_min - 0.5).abs()),
        numeric: Some(sand_min),
        note: "minimized leakage".into(),
    });
    let mut p = 0.0;
    while p < OTP_BOUND_THRESHOLD {
        let bound = otp_lower_bound(p)?.value;
        let numeric = if p > 0.0 {
            Some(leakage_regular(&canonical(&make_otp(p)?.dist))?.delta)
        } else {
            None
        };
        let reference = (p == 0.0).then_some(0.011);
        rows.push(Table1Row {
            row: "otp".into(),
            parameter: format!("p={}", csv_num(p)),
            reference,
            computed: bound,
            abs_diff: reference.map(|v| (v - bound).abs()),
            numeric,
            note: "lower bound; numeric is the canonical leakage".into(),
        });
        p = ((p + 0.01) * 100.0).round() / 100.0;
    }

    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.row.clone(),
                r.parameter.clone(),
                csv_opt(r.reference),
                csv_num(r.computed),
                csv_opt(r.abs_diff),
                csv_opt(r.numeric),
                r.note.clone(),
            ]
        })
        .collect();
    let opt = |v: Option<f64>| v.map(human).unwrap_or_else(|| "-".into());
    let human_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.row.clone(),
                r.parameter.clone(),
                opt(r.reference),
                human(r.computed),
                opt(r.abs_diff),
                opt(r.numeric),
            ]
        })
        .collect();
    let text = table_text(&["row", "parameter", "reference", "computed", "abs_diff", "numeric"], &human_rows);
    Ok(Report::new(
        json!({ "rows": rows }),
        vec!["row", "parameter", "reference", "computed", "abs_diff", "numeric", "note"],
        csv_rows,
        text,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AttackSide {
    Bob,
    Alice,
    Both,
}

pub fn attack(input: &str, side: AttackSide) -> Result<Report, Failure> {
    let loaded = load(input)?;
    let e = canonical(&loaded.dist);
    let mut outcomes: Vec<(&str, AttackOutcome)> = Vec::new();
    if side != AttackSide::Alice {
        outcomes.push(("bob", run_povm_attack(&e, &bob_xor_povm(), Side::Bob, &xor_of_bits)?));
    }
    if side != AttackSide::Bob {
        outcomes.push(("alice", run_povm_attack(&e, &alice_choice_povm(), Side::Alice, &choice_bit)?));
    }
    let mut csv_rows = Vec::new();
    let mut human_rows = Vec::new();
    let mut summary = String::new();
    for (who, o) in &outcomes {
        summary += &format!(
            "{who}: conclusive {}  correctness {}  success {}\n",
            human(o.conclusive_probability),
            human(o.conditional_correctness),
            human(o.success_probability())
        );
        for row in &o.outcome_table {
            let inferred = row.inferred.clone().unwrap_or_else(|| "?".into());
            let joint: Vec<String> = row.target_joint.iter().map(|(t, v)| format!("{t}:{}", human(*v))).collect();
            human_rows.push(vec![who.to_string(), row.label.clone(), human(row.probability), inferred.clone(), joint.join(" ")]);
            for (t, v) in &row.target_joint {
                csv_rows.push(vec![
                    who.to_string(),
                    row.label.clone(),
                    csv_num(row.probability),
                    inferred.clone(),
                    t.clone(),
                    csv_num(*v),
                ]);
            }
        }
    }
    let text = format!(
        "primitive {}\n{summary}\n{}",
        loaded.name,
        table_text(&["side", "outcome", "probability", "guess", "target distribution"], &human_rows)
    );
    let results = json!({
        "primitive": loaded.name,
        "attacks": outcomes.iter().map(|(w, o)| json!({"side": w, "outcome": o})).collect::<Vec<_>>(),
    });
    Ok(Report::new(
        results,
        vec!["side", "outcome", "probability", "guess", "target", "joint_probability"],
        csv_rows,
        text,
    ))
}

pub fn check(suite: &str, seed: u64) -> Result<Report, Failure> {
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(seed)?
    } else {
        vec![run_suite(suite, seed)?]
    };
    let mut rows = Vec::new();
    let mut human_rows = Vec::new();
    let mut failing = Vec::new();
    for s in &reports {
        for p in &s.properties {
            if !p.ok() {
                failing.push(format!("{}/{}", s.suite, p.name));
            }
            rows.push(vec![
                s.suite.clone(),
                p.name.clone(),
                p.passed.to_string(),
                p.total.to_string(),
                csv_num(p.max_violation),
                csv_num(p.tolerance),
            ]);
            human_rows.push(vec![
                s.suite.clone(),
                p.name.clone(),
                format!("{}/{}", p.passed, p.total),
                human(p.max_violation),
                human(p.tolerance),
                if p.ok() { "pass" } else { "FAIL" }.into(),
            ]);
        }
    }
    let verdict = if failing.is_empty() {
        "all properties pass".to_string()
    } else {
        format!("failing: {}", failing.join(", "))
    };
    let text = format!(
        "{}\n{verdict}\n",
        table_text(&["suite", "property", "passed", "max_violation", "tolerance", "status"], &human_rows)
    );
    let mut report = Report::new(
        json!({ "suites": reports, "passed": failing.is_empty() }),
        vec!["suite", "property", "passed", "total", "max_violation", "tolerance"],
        rows,
        text,
    );
    if !failing.is_empty() {
        report.failed = Some(verdict);
    }
    Ok(report)
}

/// File name for a primitive id: `rot/3` becomes `rot_3.json`.
pub fn export_file_name(id: &str) -> String {
    format!("{}.json", id.replace(['/', ':'], "_"))
}

pub fn export(ids: &[String], dir: Option<&Path>) -> Result<Report, Failure> {
    let ids: Vec<String> = if ids.is_empty() {
        catalog().iter().map(|k| k.id()).collect()
    } else {
        ids.to_vec()
    };
    if let Some(d) = dir {
        std::fs::create_dir_all(d).map_err(|e| Failure::Validation(format!("{}: {e}", d.display())))?;
    }
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut human_rows = Vec::new();
    for id in &ids {
        let kind = id.parse().map_err(|e: embedlab::Error| Failure::Parse(e.to_string()))?;
        let spec = PrimitiveSpec::build(kind)?;
        let file = dir.map(|d| d.join(export_file_name(&spec.id())));
        if let Some(f) = &file {
            std::fs::write(f, spec.dist.to_json() + "\n")
                .map_err(|e| Failure::Validation(format!("{}: {e}", f.display())))?;
        }
        for (x, y) in spec.dist.support() {
            rows.push(vec![
                spec.id(),
                spec.dist.x_alphabet().label(x).to_string(),
                spec.dist.y_alphabet().label(y).to_string(),
                csv_num(spec.dist.p(x, y)),
            ]);
        }
        human_rows.push(vec![
            spec.id(),
            format!("{}x{}", spec.dist.nx(), spec.dist.ny()),
            spec.dist.support().len().to_string(),
            file.as_ref().map(|f| f.display().to_string()).unwrap_or_else(|| "-".into()),
        ]);
        entries.push(json!({
            "id": spec.id(),
            "file": file.map(|f| f.display().to_string()),
            "distribution": serde_json::to_value(&spec.dist).expect("distributions serialize"),
        }));
    }
    let text = table_text(&["id", "shape", "support", "file"], &human_rows);
    Ok(Report::new(json!({ "primitives": entries }), vec!["id", "x", "y", "p"], rows, text))
}
