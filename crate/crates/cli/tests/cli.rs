use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn polyknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

fn find<'a>(recs: &'a [Value], kind: &str) -> Vec<&'a Value> {
    recs.iter().filter(|r| r["record"] == kind).collect()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polyknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_names_the_cell() {
    for (a, b, cell) in [("-2", "0", "D"), ("-14", "24", "B"), ("0", "0", "O"), ("1", "0", "C"), ("-3", "-1", "B'")] {
        let out = polyknot(&["classify", "--a", a, "--b", b]);
        assert_eq!(out.status.code(), Some(0));
        let recs = records(&out);
        assert_eq!(find(&recs, "cell")[0]["cell"], cell, "a = {a}, b = {b}");
    }
}

#[test]
fn classify_reports_breakpoints_and_decomposition() {
    let out = polyknot(&["classify", "--a", "-14", "--b", "24"]);
    let recs = records(&out);
    let bp = &find(&recs, "breakpoints")[0]["values"];
    assert_eq!(bp["tau"], -1.0);
    assert_eq!(bp["m23"], 1.5);
    assert_eq!(find(&recs, "critical_roots")[0]["values"], serde_json::json!([-3.0, 1.0, 2.0]));

    let out = polyknot(&["classify", "--a", "-2", "--b", "0"]);
    let recs = records(&out);
    let comps = &find(&recs, "relation_curve")[0]["components"];
    assert_eq!(comps.as_array().unwrap().len(), 2);
}

#[test]
fn classify_normalizes_general_quartics() {
    // (t - 1)^4 + (t - 1)^2 without its constant term
    let out = polyknot(&["classify", "--coeffs", "-4,7,-6"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let nf = find(&recs, "normal_form")[0];
    assert!((nf["t0"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((nf["a"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(nf["b"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(find(&recs, "cell")[0]["cell"], "C");
}

#[test]
fn classify_line_reports_conditions() {
    // the pencil through t^4 - 2t^2 in direction t^2 shares infinitely many
    let out = polyknot(&["classify", "--a", "-2", "--b", "0", "--line", "0,-1,0"]);
    let recs = records(&out);
    let c = &find(&recs, "conditions")[0];
    assert_eq!(c["infinite"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["classify"],
        &["classify", "--a", "1"],
        &["classify", "--coeffs", "1,2"],
        &["scan", "--cell", "Q"],
        &["scan", "--cell", "B", "--resolution", "8"],
        &["verify", "--suite", "nonsense"],
        &["columns", "--n", "2"],
        &["verify", "--suite", "constants", "--tolerance", "-1"],
        &["plot", "--figure", "heart", "--a", "1", "--b", "1", "--out", "/nonexistent/x.svg"],
    ] {
        let out = polyknot(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_two() {
    let out = polyknot(&["classify", "--a", "1", "--b", "1", "--output", "/nonexistent/dir/out.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_checks_exit_one() {
    let out = polyknot(&["verify", "--suite", "orderings", "--tolerance", "1000", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    let summary = find(&recs, "summary")[0];
    assert_eq!(summary["verdict"], "fail");
    assert_eq!(summary["failed"].as_array().unwrap().len(), 11);
}

#[test]
fn verify_records_carry_id_inputs_margin_verdict() {
    let out = polyknot(&["verify", "--suite", "constants"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let checks = find(&recs, "check");
    assert_eq!(checks.len(), 6);
    for c in checks {
        assert!(c["id"].is_string());
        assert!(c["inputs"].is_object());
        assert!(c["margin"].as_f64().unwrap() >= 0.0);
        assert_eq!(c["verdict"], "pass");
    }
}

#[test]
fn output_is_byte_stable_for_a_seed() {
    let args = ["verify", "--suite", "sigma", "--samples", "50", "--seed", "3"];
    let a = polyknot(&args);
    let b = polyknot(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = polyknot(&["verify", "--suite", "sigma", "--samples", "50", "--seed", "4"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn output_flag_writes_the_records() {
    let path = tmp("records.jsonl");
    let out = polyknot(&["verify", "--suite", "cubic", "--samples", "100", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().last().unwrap().contains(r#""record":"summary""#));
}

#[test]
fn scan_b_agrees_with_the_lists() {
    let out = polyknot(&["scan", "--cell", "B", "--samples", "2", "--per", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(find(&recs, "fiber").len(), 2 * 8 * 2);
    let ag = find(&recs, "agreement")[0];
    assert_eq!(ag["disagree"], 0);
    assert!(ag["agree"].as_u64().unwrap() > 0);
}

#[test]
fn scan_d_locates_thresholds() {
    let out = polyknot(&["scan", "--cell", "D", "--per", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let th = find(&recs, "threshold");
    assert_eq!(th.len(), 4);
    for t in th {
        let (x, y) = (t["located"].as_f64().unwrap(), t["closed_form"].as_f64().unwrap());
        assert!((x - y).abs() <= 1e-6);
    }
}

#[test]
fn scan_summarizes_other_cells() {
    let out = polyknot(&["scan", "--cell", "A", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let s = &find(&recs, "summary")[0];
    assert_eq!(s["summary"]["slices_with_three"], 0);
}

#[test]
fn plots_are_deterministic_svg() {
    for fig in ["cells", "rcurves", "lemma7", "dcell"] {
        let p1 = tmp(&format!("{fig}-1.svg"));
        let p2 = tmp(&format!("{fig}-2.svg"));
        for p in [&p1, &p2] {
            let out = polyknot(&["plot", "--figure", fig, "--slices", "40", "--out", p.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{fig}");
        }
        let a = std::fs::read(&p1).unwrap();
        assert_eq!(a, std::fs::read(&p2).unwrap(), "{fig}");
        let s = String::from_utf8(a).unwrap();
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    }
}

#[test]
fn fiber_plots_mark_open_ends_dashed() {
    let p = tmp("diamond.svg");
    let out = polyknot(&["plot", "--figure", "diamond", "--slices", "60", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let s = std::fs::read_to_string(&p).unwrap();
    assert!(s.contains("stroke-dasharray"));
    assert!(s.matches("<line").count() > 10);
}

#[test]
fn columns_ledger_for_four_components() {
    let out = polyknot(&["columns", "--n", "4", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let cols = find(&recs, "column");
    assert_eq!(cols.len(), 3);
    assert_eq!(cols[0]["p"], -1);
    assert_eq!(cols[0]["free_generator_at_q"], 3);
    for c in &cols {
        assert_eq!(c["status"], "supported");
        assert!(c["note"].as_str().unwrap().contains("not machine-proved"));
    }
    let groups: Vec<&str> = cols[1]["support"].as_array().unwrap().iter().map(|g| g["scan"].as_str().unwrap()).collect();
    assert_eq!(groups, ["region scan", "heart/diamond structure", "infinite-line detection"]);
}

#[test]
fn columns_for_three_components_notes_the_circle() {
    let out = polyknot(&["columns", "--n", "3", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert!(find(&recs, "note")[0]["text"].as_str().unwrap().contains("circle"));
    assert_eq!(find(&recs, "column")[0]["free_generator_at_q"], 2);
}

#[test]
fn failed_support_marks_the_column_unsupported() {
    // no canonical representative matches to within 1e-300
    let out = polyknot(&["columns", "--n", "3", "--samples", "100", "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    let cols = find(&recs, "column");
    assert_eq!(cols[0]["status"], "unsupported");
}
