//! The command-line tool, run as a subprocess.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::oracle_ln;
use linext::extreal::parse_rational;
use linext::Rational;
use num_traits::Signed;

fn linext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linext")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_spec(dir: &Path, name: &str, json: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn intro(dir: &Path) -> String {
    write_spec(
        dir,
        "intro-f.json",
        r#"{"dim":3,"dirs":[["0","0","1"],["0","1","0"]],"tail":["1","0","0"]}"#,
    )
    .to_str()
    .unwrap()
    .into()
}

#[test]
fn eval_prints_value_and_class() {
    let dir = tempfile::tempdir().unwrap();
    let spec = intro(dir.path());
    for (point, value) in [("1,2,3", "inf"), ("7,0,0", "7"), ("0,0,0", "0"), ("4,-1,0", "-inf")] {
        let out = linext(&["eval", &spec, point]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).lines().next(), Some(value), "at {point}");
    }
}

#[test]
fn eval_accepts_affine_specs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "h.json",
        r#"{"f":{"dim":1,"dirs":[["1"]],"tail":["0"]},"anchor":["1"],"offset":"1"}"#,
    );
    let out = linext(&["eval", spec.to_str().unwrap(), "1"]);
    assert_eq!(stdout(&out).lines().next(), Some("1"));
    let out = linext(&["eval", spec.to_str().unwrap(), "0"]);
    assert_eq!(stdout(&out).lines().next(), Some("-inf"));
}

#[test]
fn axioms_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = intro(dir.path());
    assert_eq!(linext(&["axioms", &spec, "--trials", "10000"]).status.code(), Some(0));
    let flat = write_spec(dir.path(), "flat.json", r#"{"dim":2,"dirs":[],"tail":["1","-2"]}"#);
    assert_eq!(linext(&["axioms", flat.to_str().unwrap()]).status.code(), Some(0));
    let broken = write_spec(
        dir.path(),
        "broken.json",
        r#"{"dim":2,"dirs":[["1","0"],["1","1"]],"tail":["0","0"]}"#,
    );
    let out = linext(&["axioms", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(linext(&["axioms", "missing.json"]).status.code(), Some(2));
}

#[test]
fn scaled_dirs_are_canonicalized_on_load() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "scaled.json",
        r#"{"dim":3,"dirs":[["0","0","5"],["0","3","0"]],"tail":["1","0","0"]}"#,
    );
    let out = linext(&["eval", spec.to_str().unwrap(), "7,0,0"]);
    assert_eq!(stdout(&out).lines().next(), Some("7"));
}

#[test]
fn score_build_verify_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("log.json");
    let table = table.to_str().unwrap();
    let out = linext(&["score", "build", "neg-entropy", "--grid-denominator", "8", "--out", table]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(table).unwrap()).unwrap();
    let preds = json["preds"].as_array().unwrap();
    let values = json["values"].as_array().unwrap();
    assert_eq!(preds.len(), values.len());
    for (p, row) in preds.iter().zip(values) {
        for y in 0..2 {
            let py = parse_rational(p[y].as_str().unwrap()).unwrap();
            let s = row[y].as_str().unwrap();
            if py == Rational::from_integer(0.into()) {
                assert_eq!(s, "-inf");
            } else {
                let diff = parse_rational(s).unwrap() - oracle_ln(&py);
                assert!(diff.abs() < common::tolerance(), "S({p},{y}) = {s}");
            }
        }
    }

    let out = linext(&["score", "verify", table]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "strictly-proper-on-grid");

    let out = linext(&["score", "reconstruct", table]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("reconstructed"));

    let csv = linext(&["score", "build", "brier", "--grid-denominator", "2", "--format", "csv", "--precision", "3"]);
    assert_eq!(
        stdout(&csv),
        "p_0,p_1,outcome,score\n0.000,1.000,0,-2.000\n0.000,1.000,1,0.000\n0.500,0.500,0,-0.500\n0.500,0.500,1,-0.500\n1.000,0.000,0,0.000\n1.000,0.000,1,-2.000\n"
    );
}

#[test]
fn verify_reports_violation_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let table = write_spec(
        dir.path(),
        "pofy.json",
        r#"{"outcomes":["0","1"],"preds":[["1","0"],["3/5","2/5"]],"values":[["1","0"],["3/5","2/5"]]}"#,
    );
    let report = dir.path().join("verdict.json");
    let out = linext(&["score", "verify", table.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("violation"));
    let verdict: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(verdict["verdict"], "violation");
    assert_eq!(verdict["score_p_at_q"], "3/5");
    assert_eq!(verdict["score_q_at_q"], "13/25");
}

#[test]
fn ill_cert_squeezed_cases() {
    let out = linext(&["score", "ill-cert", "squeezed:1/4,3/4,closed-closed"]);
    assert_eq!(stdout(&out).trim(), "fails-at p=(1/4,3/4)");
    assert_eq!(out.status.code(), Some(1));
    let out = linext(&["score", "ill-cert", "squeezed:1/4,3/4,closed-closed", "--expect", "fails-at p=(1/4,3/4)"]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["neg-entropy", "squeezed:1/4,3/4,open-open", "squeezed:0,1/2,closed-open"] {
        let out = linext(&["score", "ill-cert", name]);
        assert_eq!((stdout(&out).trim(), out.status.code()), ("certified", Some(0)), "{name}");
    }
    assert_eq!(linext(&["score", "ill-cert", "no-such-function"]).status.code(), Some(2));
}

fn plot(args: &[&str]) -> Vec<(String, String)> {
    let out = linext(args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p1,g"));
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect()
}

#[test]
fn plotdata_neg_entropy_minimum() {
    let rows = plot(&["plotdata", "neg-entropy", "--resolution", "101"]);
    assert_eq!(rows.len(), 101);
    let values: Vec<Rational> = rows.iter().map(|(_, g)| parse_rational(g).unwrap()).collect();
    let (argmin, min) = values.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
    assert_eq!(rows[argmin].0, format!("0.{}", "5".to_string() + &"0".repeat(49)));
    let diff = min + oracle_ln(&Rational::from_integer(2.into()));
    assert!(diff.abs() < common::tolerance());
}

#[test]
fn plotdata_squeezed_is_infinite_outside() {
    let rows = plot(&["plotdata", "squeezed:1/4,3/4", "--resolution", "21", "--precision", "4"]);
    for (p1, g) in rows {
        let p = parse_rational(&p1).unwrap();
        let inside = p >= parse_rational("0.25").unwrap() && p <= parse_rational("0.75").unwrap();
        assert_eq!(g == "inf", !inside, "p1 = {p1}, g = {g}");
    }
}

#[test]
fn plotdata_brier_and_binary_only() {
    let rows = plot(&["plotdata", "brier", "--resolution", "5", "--precision", "4"]);
    let want = ["0.0000", "-0.3750", "-0.5000", "-0.3750", "0.0000"];
    for ((_, g), w) in rows.iter().zip(want) {
        assert_eq!(g, w);
    }
    assert_eq!(linext(&["plotdata", "brier", "--outcomes", "3"]).status.code(), Some(2));
}
