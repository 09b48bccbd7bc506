use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use partcount::circuit_text;
use serde_json::Value;
use tempfile::TempDir;

fn partcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partcount")).args(args).output().unwrap()
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn count_agrees_across_methods() {
    let dir = TempDir::new().unwrap();
    let fixtures = [
        (write(&dir, "a.txt", "1 2 3 4\n"), 2),
        (write(&dir, "b.json", r#"{"a": [1, 1, 1, 4]}"#), 1),
        (write(&dir, "c.txt", "2 2 2 4"), 0),
        (write(&dir, "d.txt", "3 1 1 2 2 1\n"), 10),
    ];
    for (path, expected) in &fixtures {
        for method in ["bruteforce", "formula", "dp", "quantum", "physical", "spectral"] {
            let out = partcount(&["count", s(path), "--method", method]);
            assert_eq!(out.status.code(), Some(0), "{method} on {path:?}");
            let v = json_stdout(&out);
            assert_eq!(v["n_s"], *expected, "{method} on {path:?}");
            assert!(v["residual"].as_f64().unwrap() < 1e-6);
        }
    }
}

#[test]
fn physical_count_reports_expectation() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", "1 1 1 4");
    let v = json_stdout(&partcount(&["count", s(&path), "--method", "physical"]));
    assert!((v["expectation"].as_f64().unwrap() - 0.00390625).abs() < 1e-10);
}

#[test]
fn constrained_count_from_flag_and_file() {
    let dir = TempDir::new().unwrap();
    let plain = write(&dir, "x.txt", "1 2 3 4 5 5");
    let json = write(&dir, "x.json", r#"{"a": [1, 2, 3, 4, 5, 5], "constraint": 2}"#);
    for method in ["bruteforce", "formula", "dp", "quantum"] {
        let a = json_stdout(&partcount(&["count", s(&plain), "--constraint", "2", "--method", method]));
        let b = json_stdout(&partcount(&["count", s(&json), "--method", method]));
        assert_eq!(a["n_s"], 1, "{method}");
        assert_eq!(b["n_s"], 1, "{method}");
    }
    // the flag overrides the file
    let c = json_stdout(&partcount(&["count", s(&json), "--constraint", "0", "--method", "bruteforce"]));
    let d = json_stdout(&partcount(&["count", s(&plain), "--constraint", "0", "--method", "dp"]));
    assert_eq!(c["n_s"], d["n_s"]);
}

#[test]
fn solve_returns_a_verified_split() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", "1 2 3 4");
    for method in ["bruteforce", "formula", "dp"] {
        let out = partcount(&["solve", s(&path), "--method", method]);
        assert_eq!(out.status.code(), Some(0));
        let v = json_stdout(&out);
        assert_eq!(v["A_1"], serde_json::json!([1, 4]));
        assert_eq!(v["A_2"], serde_json::json!([2, 3]));
        assert_eq!(v["spins"], serde_json::json!([1, -1, -1, 1]));
        let flipped: Vec<bool> = v["trace"]["steps"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["flipped"].as_bool().unwrap())
            .collect();
        assert_eq!(flipped, [false, true, true, false]);
    }
}

#[test]
fn solve_without_solution_exits_3() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", "2 2 2 4");
    let out = partcount(&["solve", s(&path)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no partition exists"));
    assert_eq!(json_stdout(&out)["spins"], Value::Null);
}

#[test]
fn usage_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "ok.txt", "1 2 3");
    let cases: Vec<Vec<String>> = vec![
        vec!["count".into(), s(&good).into(), "--method".into(), "nope".into()],
        vec!["count".into(), s(&write(&dir, "zero.txt", "1 0 2")).into()],
        vec!["count".into(), s(&write(&dir, "word.txt", "1 two")).into()],
        vec!["count".into(), s(&write(&dir, "bad.json", r#"{"a": [1], "extra": 1}"#)).into()],
        vec!["count".into(), dir.path().join("missing.txt").to_str().unwrap().into()],
        vec!["count".into(), s(&good).into(), "--constraint".into(), "7".into()],
        vec!["spectrum".into(), s(&good).into(), "--n-t".into(), "1".into()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(partcount(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn circuit_text_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", "1 2 3 4");
    for extra in [&["--mode", "physical"][..], &["--mode", "amplitude", "--direct"], &["--constraint", "0", "--mode", "amplitude"]] {
        let mut args = vec!["circuit", s(&path)];
        args.extend_from_slice(extra);
        let out = partcount(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let (layout, circuit) = circuit_text::parse(&text).unwrap();
        assert_eq!(circuit_text::emit(&layout, &circuit), text, "{args:?}");
    }
}

#[test]
fn circuit_over_budget_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", "1 2 3 4");
    let out = partcount(&["circuit", s(&path), "--budget-qubits", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spectrum_writes_both_csv_files() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", "1 2 3 4");
    let prefix = dir.path().join("spec");
    let out = partcount(&["spectrum", s(&path), "--n-t", "64", "--n-omega", "11", "--out", s(&prefix)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["inferred_n_s"], 2);

    let samples = std::fs::read_to_string(dir.path().join("spec_samples.csv")).unwrap();
    let mut lines = samples.lines();
    assert_eq!(lines.next(), Some("t,re,im"));
    assert_eq!(lines.count(), 64);
    let scan = std::fs::read_to_string(dir.path().join("spec_scan.csv")).unwrap();
    let mut lines = scan.lines();
    assert_eq!(lines.next(), Some("omega,magnitude"));
    assert_eq!(lines.count(), 11);
}

fn bench_config(dir: &TempDir, per_cell: usize) -> PathBuf {
    write(
        dir,
        "bench.json",
        &format!(r#"{{"n_values": [4, 6], "b_values": [2, 5], "instances_per_cell": {per_cell}, "seed": 7}}"#),
    )
}

#[test]
fn bench_is_deterministic_without_timing() {
    let dir = TempDir::new().unwrap();
    let config = bench_config(&dir, 10);
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for out in [&first, &second] {
        let status = partcount(&["bench", s(&config), "--out", s(out), "--omit-timing"]).status;
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read(&first).unwrap();
    assert_eq!(a, std::fs::read(&second).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next(), Some("n,b,idx,n_s,solvable,elapsed_ns"));
    assert_eq!(text.lines().count(), 1 + 4 * 10);

    // another seed gives other instances
    let third = dir.path().join("third.csv");
    partcount(&["bench", s(&config), "--out", s(&third), "--omit-timing", "--seed", "8"]);
    assert_ne!(std::fs::read(&third).unwrap(), std::fs::read(&first).unwrap());
}

#[test]
fn bench_methods_agree() {
    let dir = TempDir::new().unwrap();
    let config = bench_config(&dir, 5);
    let read = |method: &str| {
        let out = dir.path().join(format!("{method}.csv"));
        let status = partcount(&["bench", s(&config), "--out", s(&out), "--omit-timing", "--method", method]).status;
        assert_eq!(status.code(), Some(0), "{method}");
        std::fs::read(out).unwrap()
    };
    let dp = read("dp");
    for method in ["bruteforce", "formula", "quantum"] {
        assert_eq!(read(method), dp, "{method}");
    }
}

#[test]
fn bench_rejects_empty_cells() {
    let dir = TempDir::new().unwrap();
    let config = bench_config(&dir, 0);
    let out = dir.path().join("x.csv");
    assert_eq!(partcount(&["bench", s(&config), "--out", s(&out)]).status.code(), Some(1));
}
