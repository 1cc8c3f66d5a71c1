//! End-to-end tests of the binary: exit codes, determinism of report
//! bytes, and the table formats.

use std::path::Path;
use std::process::{Command, Output};

fn blochball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blochball"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).expect("output file exists")
}

#[test]
fn verify_all_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    for (path, threads) in [(&first, "1"), (&second, "3")] {
        let out = Command::new(env!("CARGO_BIN_EXE_blochball"))
            .env("BLOCHBALL_THREADS", threads)
            .args([
                "verify",
                "--suite",
                "all",
                "--dim",
                "1",
                "--dim",
                "2",
                "--samples",
                "1000",
                "--seed",
                "7",
                "--output",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(read(&first), read(&second), "report bodies must match byte for byte");
}

#[test]
fn verify_exit_codes() {
    let ok = blochball(&["verify", "--suite", "geometry", "--dim", "1", "--samples", "500"]);
    assert_eq!(ok.status.code(), Some(0));
    let stdout = String::from_utf8(ok.stdout).unwrap();
    assert!(stdout.contains("PASS geometry.metric_consistency.d1"));

    // configuration rejection: nonpositive tolerance
    let bad_tol = blochball(&["verify", "--suite", "geometry", "--tol", "-1"]);
    assert_eq!(bad_tol.status.code(), Some(2));

    // unknown suite
    let bad_suite = blochball(&["verify", "--suite", "nonsense", "--samples", "10"]);
    assert_eq!(bad_suite.status.code(), Some(2));

    // clap-level usage error
    let bad_flag = blochball(&["verify", "--does-not-exist"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn verify_scaling_reports_a_sharp_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scaling.json");
    let out = blochball(&[
        "verify",
        "--suite",
        "scaling",
        "--dim",
        "1",
        "--samples",
        "1000",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&read(&path)).unwrap();
    let sharp = report["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["id"] == "scaling.sharpness.d1")
        .expect("sharpness assertion present");
    assert!(sharp["rhs"].as_f64().unwrap() >= 1.95);
    assert!(sharp["witness"]["z"].is_array());
}

#[test]
fn verify_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = blochball(&[
        "verify",
        "--suite",
        "c0s",
        "--samples",
        "500",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(read(&path)).unwrap();
    assert!(text.starts_with("id,dimension,samples,violations,lhs,rhs,tolerance,margin,passed"));
    assert!(text.contains("c0s.scaling_bound"));
}

#[test]
fn counterexample_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = blochball(&[
        "counterexample",
        "--n-max",
        "100",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(read(&path)).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0], "n,ratio_formula,ratio_direct,abs_difference");
    // n = 1 is the trivial scaling
    assert!(rows[1].starts_with("1,1.0000000000000000e0,1.0000000000000000e0"));
    // the formula column is nondecreasing from n = 2 on, ending above 25
    let mut prev = f64::NEG_INFINITY;
    let mut last = 0.0;
    for row in &rows[2..] {
        let ratio: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!(ratio >= prev, "column must be nondecreasing");
        prev = ratio;
        last = ratio;
    }
    assert!(last > 25.0);
}

#[test]
fn scan_ratio_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = blochball(&[
        "scan-ratio",
        "--t-steps",
        "7",
        "--z-steps",
        "12",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(read(&path)).unwrap();
    let mut saw_rotation_row = false;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let t: f64 = cols[0].parse().unwrap();
        let z: f64 = cols[1].parse().unwrap();
        let within = cols[2] == "1";
        if cols[3].is_empty() {
            continue;
        }
        let ratio: f64 = cols[3].parse().unwrap();
        if z == 1.0 {
            saw_rotation_row = true;
            assert!((ratio - 1.0).abs() < 1e-12, "rotations preserve the metric");
        }
        if within {
            assert!(ratio <= 2.0 + 1e-9, "t={t} z={z} ratio={ratio}");
        }
    }
    assert!(saw_rotation_row);

    // the smallest |z| column approaches the antipodal limit 1 + t^2
    let first_data_line = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = first_data_line.split(',').collect();
    let t: f64 = cols[0].parse().unwrap();
    let ratio: f64 = cols[3].parse().unwrap();
    assert!((ratio - (1.0 + t * t)).abs() < 1e-2);

    // empty grid writes an empty file and exits 0
    let empty = dir.path().join("empty.csv");
    let out = blochball(&["scan-ratio", "--t-steps", "0", "--output", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(read(&empty).is_empty());
}

#[test]
fn analyze_map_outputs() {
    let dir = tempfile::tempdir().unwrap();

    let path = dir.path().join("mobius.json");
    let out = blochball(&[
        "analyze-map",
        "mobius:a=0.5",
        "--samples",
        "200",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&read(&path)).unwrap();
    assert_eq!(v["sufficient"]["success"], serde_json::Value::Bool(true));
    // the witnesses report tau at least one for an automorphism
    assert!(v["min_witness_tau"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert!(v["derivative_bound"]["max"].as_f64().unwrap() <= 1.0 + 1e-9);

    let path = dir.path().join("scalar.json");
    let out = blochball(&[
        "analyze-map",
        "scalar:0.5",
        "--samples",
        "200",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&read(&path)).unwrap();
    assert_eq!(v["necessary_obstruction_flag"], serde_json::Value::Bool(true));
    assert!(v["necessary"]["r_hat"].as_f64().unwrap() >= 0.8);

    let path = dir.path().join("kalaj.json");
    let out = blochball(&[
        "analyze-map",
        "kalaj:t=0.7",
        "--samples",
        "200",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&read(&path)).unwrap();
    let at_origin = v["derivative_bound"]["at_origin"].as_f64().unwrap();
    assert!((at_origin - 1.0).abs() <= 1e-9, "sharp example attains equality");

    // unparseable specs are usage errors
    let bad = blochball(&["analyze-map", "spiral:9"]);
    assert_eq!(bad.status.code(), Some(2));
}
