//! End-to-end checks of the `lommel` binary: golden tables, output formats and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn lommel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lommel")).args(args).env_remove("LOMMEL_QUAD_TOL").output().unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn tables_match_golden_files() {
    for id in ["1", "2", "3"] {
        for (format, ext) in [("csv", "csv"), ("human", "human")] {
            let out = lommel(&["--format", format, "table", "--id", id]);
            assert!(out.status.success(), "table {id} {format}");
            assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(&format!("table{id}.{ext}")), "table {id} {format}");
        }
    }
}

#[test]
fn table_json_is_parseable() {
    let out = lommel(&["--format", "json", "table", "--id", "3"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[7]["bound_tag"], "complex-axis");
}

#[test]
fn eval_json_fields() {
    let out = lommel(&["--format", "json", "eval", "--fn", "lommel-s", "--mu", "-2", "--nu", "1.5", "--z", "20@0", "--n", "5", "--oracle"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let v = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(v["N"], 5);
    assert_eq!(v["bound_tag"], "real-order");
    let bound = v["abs_bound"].as_f64().unwrap();
    assert!((bound - 6.5562e-6).abs() < 5e-11);
    let rem = v["remainder_re"].as_f64().unwrap().hypot(v["remainder_im"].as_f64().unwrap());
    assert!(rem <= bound);
}

#[test]
fn eval_csv_has_header() {
    let out = lommel(&["--format", "csv", "eval", "--fn", "anger-weber", "--nu", "0.7", "--z", "15@0.4", "--n", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), lommel::cli::EVAL_CSV_HEADER);
    assert_eq!(lines.count(), 2);
}

#[test]
fn bound_probe_has_one_winner() {
    let out = lommel(&["--format", "csv", "bound-probe", "--p", "6", "--theta", "3pi/8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), lommel::cli::PROBE_CSV_HEADER);
    assert_eq!(text.lines().filter(|l| l.ends_with(",true")).count(), 1);
}

#[test]
fn selftest_passes() {
    let out = lommel(&["selftest"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn exit_codes() {
    assert_eq!(lommel(&["table", "--id", "7"]).status.code(), Some(1));
    assert_eq!(lommel(&["eval", "--fn", "lommel-s", "--mu", "1", "--nu", "0", "--z", "20"]).status.code(), Some(1));
    assert_eq!(lommel(&["eval", "--fn", "lommel-s", "--mu", "1", "--nu", "0", "--z", "0@0"]).status.code(), Some(2));
    assert_eq!(lommel(&["eval", "--fn", "struve-h", "--nu", "1", "--z", "10@0", "--scaled"]).status.code(), Some(2));
    let out = lommel(&["--format", "json", "eval", "--fn", "scorer-gi", "--z", "8@1.2"]);
    assert_eq!(out.status.code(), Some(2));
    let e: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"], "domain");
}

#[test]
fn quad_tol_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_lommel"))
        .args(["eval", "--fn", "lommel-s", "--mu", "-2", "--nu", "1.5", "--z", "20@0", "--n", "5", "--oracle"])
        .env("LOMMEL_QUAD_TOL", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_lommel"))
        .args(["eval", "--fn", "lommel-s", "--mu", "-2", "--nu", "1.5", "--z", "20@0", "--n", "5", "--oracle"])
        .env("LOMMEL_QUAD_TOL", "1e-8")
        .output()
        .unwrap();
    assert!(out.status.success());
}
