use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigenwedge"))
}

fn write_input(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eigenwedge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

const DIAG: &str = "3 3\n2 0 0\n0 2 0\n0 0 5\n";

#[test]
fn compound_table_has_subset_labels() {
    let f = write_input("diag.txt", DIAG);
    let out = run(&["compound", "-k", "2", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("{1,2}") && text.contains("{2,3}"), "{text}");
    assert!(text.contains("10"));
}

#[test]
fn adjugate_json_round_trips_as_a_matrix_document() {
    let f = write_input("diag-adj.txt", DIAG);
    let out = run(&[
        "--format",
        "json",
        "adjugate",
        "-k",
        "2",
        f.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let entries: Vec<&str> = doc["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(entries, ["5", "0", "0", "0", "2", "0", "0", "0", "2"]);
    let back = eigenwedge::io::parse_matrix(&doc["result"].to_string()).unwrap();
    assert_eq!(back.dims(), (3, 3));
}

#[test]
fn charpoly_coefficients() {
    let out = run_stdin(&["--format", "json", "charpoly", "-"], DIAG);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let c: Vec<&str> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    // (2 - t)^2 (5 - t)
    assert_eq!(c, ["20", "-24", "9", "-1"]);
}

#[test]
fn eigvals_reports_multiplicities() {
    let out = run_stdin(&["--format", "json", "eigvals", "-"], "2 2\n1 1\n0 1\n");
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let e = &doc["eigenvalues"][0];
    assert_eq!(e["eigenvalue"], "1");
    assert_eq!(e["algebraic"], 2);
    assert_eq!(e["geometric"], 1);
    assert_eq!(doc["unresolved_degree"], 0);
}

#[test]
fn eigvals_float_mode() {
    let out = run_stdin(&["eigvals", "-"], "2 2 float\n0 -1\n1 0\n");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains('i'), "{text}");
}

#[test]
fn eigrecover_auto_and_explicit() {
    let out = run_stdin(&["--format", "json", "eigrecover", "-"], DIAG);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["eigenvalue"], "2");
    assert_eq!(results[0]["multiplicity"], 2);
    assert_eq!(results[0]["scale"], "3");
    let residual: f64 = results[0]["residuals"]["identity"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(residual, 0.0);

    let out = run_stdin(&["eigrecover", "--lambda", "5,0", "-"], DIAG);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("multiplicity k = 1"));
}

#[test]
fn eigrecover_failures_exit_one() {
    let out = run_stdin(&["eigrecover", "--lambda", "3", "-"], DIAG);
    assert_eq!(out.status.code(), Some(1));
    let out = run_stdin(&["eigrecover", "-"], "2 2\n1 1\n0 1\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("defective"));
}

#[test]
fn eigrecover_negative_lambda_is_not_a_flag() {
    let out = run_stdin(&["eigrecover", "--lambda", "-1", "-"], "2 2\n-1 0\n0 4\n");
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn hermitian_magnitudes() {
    let out = run_stdin(
        &["--format", "json", "hermitian-ev", "-"],
        "2 2\n2 1\n1 2\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for row in doc["magnitudes"].as_array().unwrap() {
        for x in row.as_array().unwrap() {
            let v: f64 = x.as_str().unwrap().parse().unwrap();
            assert!((v - 0.5).abs() < 1e-12);
        }
    }
    let out = run_stdin(&["hermitian-ev", "-"], "2 2\n1 2\n0 1\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_a_file() {
    let out = run_stdin(&["verify", "-"], "3 3\n1 2 0\n0 1 3\n4 0 1\n");
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = run_stdin(
        &["--format", "json", "verify", "-"],
        "2 2 float\n0.5 1e-3\n2 -1\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn verify_suite_echoes_seed_and_detects_corruption() {
    let out = run(&["verify", "--trials", "4", "--dim-max", "3", "--seed", "77"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"seed\":77"));
    let out = run(&["verify", "--trials", "4", "--dim-max", "3", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_and_usage_errors() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["compound", "missing.txt"]).status.code(), Some(2));
    assert_eq!(
        run(&["charpoly", "/nonexistent/matrix.txt"]).status.code(),
        Some(1)
    );
    let out = run_stdin(&["charpoly", "-"], "2 2\n1 x\n0 1\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run_stdin(&["charpoly", "-"], "2 3\n1 2 3\n4 5 6\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
