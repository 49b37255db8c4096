use std::process::{Command, Output};

use serde_json::Value;

fn gaussfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussfact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn compute_reports_worked_example() {
    let out = gaussfact(&["compute", "--field", "p=3", "--f", "X^3+2*X+2", "--S", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["f"], "X^3+2*X+2");
    assert_eq!(v["S"], "1");
    assert_eq!(v["delta"], 1);
    assert_eq!(v["G"], "2");
    assert_eq!(v["G_half"], "2");
    assert_eq!(v["M"], "2");
    assert_eq!(v["h"], 7);
    assert_eq!(v["order"], 2);
    assert_eq!(v["clause"], "2a");
    assert_eq!(v["predicted"], "2");
    assert_eq!(v["matches"], true);
    assert_eq!(v["factorization"]["factors"][0]["exp"], 1);
    assert_eq!(v["phi"], "26");
}

#[test]
fn compute_precondition_errors() {
    let out = gaussfact(&["compute", "--field", "p=3", "--f", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zero polynomial"));

    let out = gaussfact(&["compute", "--field", "p=2", "--f", "X^2", "--S", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("requires odd q"));

    let out = gaussfact(&["compute", "--field", "p=3", "--f", "X^2+", "--S", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classnum_json() {
    let out = gaussfact(&["classnum", "--field", "p=3", "--P", "X^3+2*X+2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"h":7,"monic_total":13,"nonresidues":3}"#);
    assert_eq!(gaussfact(&["classnum", "--field", "p=2", "--P", "X"]).status.code(), Some(2));
    assert_eq!(gaussfact(&["classnum", "--field", "p=3", "--P", "X^2+1"]).status.code(), Some(2));
}

#[test]
fn verify_row_counts() {
    let out = gaussfact(&["verify", "--field", "p=3", "--theorem", "con1", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 120);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["matches"], true);
    }
    assert!(stderr(&out).contains(r#""instances":120,"mismatches":0"#));

    let out = gaussfact(&[
        "verify", "--field", "p=3", "--theorem", "extension", "--max-degree", "4", "--S", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 240);
}

#[test]
fn verify_requires_odd_q() {
    let out = gaussfact(&["verify", "--field", "p=2", "--theorem", "extension", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("requires odd q"));
}

#[test]
fn verify_refuses_oversized_sweeps() {
    let out = gaussfact(&[
        "verify", "--field", "p=3", "--theorem", "con1", "--max-degree", "4", "--budget", "50",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"), "{}", stderr(&out));
}

#[test]
fn serial_and_parallel_files_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for jobs in ["1", "4"] {
        let path = dir.path().join(format!("report-{jobs}.csv"));
        let out = gaussfact(&[
            "verify", "--field", "p=5", "--theorem", "half_value,extension", "--max-degree", "2",
            "--S", "all", "--format", "csv", "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stdout(&out).is_empty());
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files.remove(0)).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "field,q,f,S,theorem,brute,predicted,matches,order,clause"
    );
    // 30 monic polynomials of degree <= 2, 4 half-systems, 2 theorems.
    assert_eq!(lines.count(), 240);
}

#[test]
fn explicit_half_systems_and_fixed_n() {
    let out = gaussfact(&[
        "verify", "--field", "p=5", "--theorem", "extension", "--max-degree", "2", "--S", "1,2",
        "--S", "1,3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 60);

    let out = gaussfact(&[
        "verify", "--field", "p=3", "--theorem", "con3", "--max-degree", "2", "--n", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let first: Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(first["n"], 3);

    let bad = gaussfact(&[
        "verify", "--field", "p=5", "--theorem", "extension", "--max-degree", "2", "--S", "1,4",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
