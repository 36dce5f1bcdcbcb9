use std::path::PathBuf;
use std::process::{Command, Output};

use monodimer::poly::parse_poly;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_monodimer"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn manifest(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad manifest ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn square_with_diagonal_polynomial() {
    let out = run(&["pf", "--graph", fixture("square_diagonal.json").to_str().unwrap(), "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    let m = manifest(&out);
    assert_eq!(m["status"], "ok");
    assert_eq!(m["outputs"]["num_terms"], 9);
    assert_eq!(m["outputs"]["pfaffian"], true);
    let got = parse_poly(m["outputs"]["polynomial"].as_str().unwrap()).unwrap();
    let want = parse_poly(
        "x^4 + a12^2*x^2 + a13^2*x^2 + a14^2*x^2 + a23^2*x^2 + a34^2*x^2 \
         + a12^2*a34^2 + a14^2*a23^2 + 2*a12*a23*a34*a14",
    )
    .unwrap();
    assert_eq!(got, want);
}

#[test]
fn square_with_diagonal_at_unit_weights() {
    let out = run(&["pf", "--graph", fixture("square_diagonal.json").to_str().unwrap(), "--at", "x=1"]);
    assert_eq!(manifest(&out)["outputs"]["value"].as_f64(), Some(10.0));
}

#[test]
fn grid_spec_file_and_root() {
    let out = run(&["pf", "--spec", fixture("grid_222.json").to_str().unwrap(), "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    let m = manifest(&out);
    let root = &m["outputs"]["root"];
    assert_eq!(root["r"], 4);
    assert_eq!(
        parse_poly(root["base"].as_str().unwrap()).unwrap(),
        parse_poly("x^2 + a1^2 + a2^2 + a3^2").unwrap()
    );
}

#[test]
fn numeric_evaluation() {
    let out = run(&["pf", "--dims", "2,2", "--at", "x=1,a=1,b=1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(manifest(&out)["outputs"]["value"].as_f64(), Some(9.0));
    let out = run(&["pf", "--dims", "6,6"]);
    assert_eq!(out.status.code(), Some(0));
    let m = manifest(&out);
    assert_eq!(m["outputs"]["mode"], "numeric");
    let want = monodimer::closed_form::zd_grid(&[6, 6], &[1.0, 1.0], 1.0).unwrap().value;
    let got = m["outputs"]["value"].as_f64().unwrap();
    assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
}

#[test]
fn closed_form_outputs() {
    let m = manifest(&run(&["closed-form", "--dims", "4,4", "--dimers"]));
    assert_eq!(m["outputs"]["value"].as_f64(), Some(36.0));
    let m = manifest(&run(&["closed-form", "--dims", "10,10,10", "--log"]));
    assert!(m["outputs"]["value"].is_null());
    let lv = m["outputs"]["log_value"].as_f64().unwrap();
    assert!((lv - 889.17).abs() < 0.01, "{lv}");
    assert_eq!(m["outputs"]["sign"], 1);
}

#[test]
fn density_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = run(&["density", "--dim", "3", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,rho_x,rho_a1,rho_a2,rho_a3,phi,est_error"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(row.len(), 7);
    assert!((row[1] - 0.1705).abs() < 1e-3);
    assert!((row[1] + row[2] + row[3] + row[4] - 1.0).abs() < 1e-9);
}

#[test]
fn sweep_csv_and_monotonicity() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = run(&["density-sweep", "--dims", "3..5", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let m = manifest(&out);
    assert_eq!(m["outputs"]["strictly_decreasing"], true);
    assert_eq!(m["outputs"]["rows"].as_array().unwrap().len(), 3);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("d,rho_x,est_error"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn runs_are_deterministic() {
    let args = ["verify", "--suite", "signs", "--trials", "5", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timing(manifest(&a)), without_timing(manifest(&b)));
}

#[test]
fn bad_input_exit_code() {
    assert_eq!(run(&["pf", "--exact"]).status.code(), Some(2));
    assert_eq!(run(&["pf", "--dims", "2,2", "--at", "q=1"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--dim", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "coords": [[0,0]], "edges": [[1,2]]}"#).unwrap();
    assert_eq!(run(&["pf", "--graph", bad.to_str().unwrap(), "--exact"]).status.code(), Some(2));
}

#[test]
fn size_cap_exit_code() {
    let out = run(&["pf", "--dims", "5,5", "--exact"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["pf", "--dims", "40,40", "--numeric"]).status.code(), Some(3));
}

#[test]
fn verify_grids_passes() {
    let out = run(&["verify", "--suite", "grids", "--max-dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let m = manifest(&out);
    assert_eq!(m["status"], "ok");
}
