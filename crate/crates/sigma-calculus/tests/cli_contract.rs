//! Contract tests for the `sigma-verify` binary: exit codes, report
//! determinism, the element file format, and the expansion printer.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sigma-verify"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("sigma-verify-test-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn default_run_passes_with_coverage() {
    let out = tmp("default.json");
    let result = run(&[
        "run",
        "--trials",
        "10",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let entries = report["entries"].as_array().unwrap();
    assert!(entries.len() >= 40, "only {} entries", entries.len());
    assert_eq!(report["overall_pass"], serde_json::Value::Bool(true));
    for field in ["name", "anchor", "residual", "threshold", "pass", "trials"] {
        assert!(entries[0].get(field).is_some(), "missing field {field}");
    }
    std::fs::remove_file(out).ok();
}

#[test]
fn reports_are_deterministic_modulo_wall_time() {
    let out1 = tmp("det1.json");
    let out2 = tmp("det2.json");
    for out in [&out1, &out2] {
        let result = run(&[
            "run",
            "--trials",
            "5",
            "--seed",
            "42",
            "--json",
            out.to_str().unwrap(),
        ]);
        assert!(result.status.success());
    }
    let mut a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out1).unwrap()).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out2).unwrap()).unwrap();
    a["wall_ms"] = 0.into();
    b["wall_ms"] = 0.into();
    assert_eq!(a, b);
    std::fs::remove_file(out1).ok();
    std::fs::remove_file(out2).ok();
}

#[test]
fn exit_codes_match_the_contract() {
    // 0: all pass (covered above). 1: tolerance below the floating floor.
    let failing = run(&["run", "--suite", "maps", "--trials", "5", "--tol", "1e-30"]);
    assert_eq!(failing.status.code(), Some(1));
    // The failing report carries nonzero residual witnesses.
    let table = String::from_utf8_lossy(&failing.stdout);
    assert!(table.contains("FAIL"));

    // 2: usage and config errors.
    for args in [
        vec!["bogus"],
        vec!["run", "--grid", "6"],
        vec!["run", "--suite", "nonsense"],
        vec!["demo", "ks", "--dim", "2"],
        vec!["expand", "--n", "99"],
        vec!["expand"],
    ] {
        let r = run(&args);
        assert_eq!(r.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn expand_matches_the_golden_file() {
    let golden = include_str!("golden/example_3_3.txt");
    let result = run(&["expand", "--n", "3"]);
    assert!(result.status.success());
    assert_eq!(String::from_utf8_lossy(&result.stdout), golden);

    let result = run(&["expand", "--n", "1"]);
    assert_eq!(String::from_utf8_lossy(&result.stdout), "σ(a)d(b)\nd(a)σ(b)\n");

    let result = run(&["expand", "--n", "5", "--k", "19"]);
    let lines: Vec<&str> = std::str::from_utf8(&result.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 8);
}

#[test]
fn ww_demo_reads_element_files() {
    let a = tmp("a.json");
    let b = tmp("b.json");
    std::fs::write(
        &a,
        r#"{"kind":"full-matrix","n":2,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    std::fs::write(
        &b,
        r#"{"kind":"full-matrix","n":2,"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    let result = run(&[
        "demo",
        "ww",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let table = String::from_utf8_lossy(&result.stdout);
    assert!(table.contains("thm-3.10-nilpotency-of-c"));

    // Conjugation σ read from a file; a central b gives c = 0, trivially
    // nilpotent, so the qualified path still passes.
    let v = tmp("v.json");
    std::fs::write(
        &v,
        r#"{"kind":"full-matrix","n":2,"re":[[1,0],[0,2]],"im":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    std::fs::write(
        &b,
        r#"{"kind":"full-matrix","n":2,"re":[[0.7,0],[0,0.7]],"im":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    let result = run(&[
        "demo",
        "ww",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--sigma",
        &format!("conjugation:{}", v.to_str().unwrap()),
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));

    // Shape mismatch in the file format is a usage error.
    std::fs::write(
        &a,
        r#"{"kind":"full-matrix","n":2,"re":[[0,1]],"im":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    let result = run(&[
        "demo",
        "ww",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
    std::fs::remove_file(a).ok();
    std::fs::remove_file(b).ok();
    std::fs::remove_file(v).ok();
}

#[test]
fn ks_demo_reports_the_factorial_table() {
    let result = run(&["demo", "ks", "--dim", "3"]);
    assert!(result.status.success());
    let table = String::from_utf8_lossy(&result.stdout);
    for n in 1..=6 {
        assert!(table.contains(&format!("thm-3.9-power-table-n{n}")));
    }
    assert!(table.contains("thm-3.9-nilpotent-verdict"));
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let cfg = tmp("config.json");
    std::fs::write(
        &cfg,
        r#"{"seed": 9, "matrix_dim": 3, "suites": ["algebra"], "trials": 5}"#,
    )
    .unwrap();
    let out1 = tmp("cfg1.json");
    let result = run(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "10",
        "--json",
        out1.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out1).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], serde_json::json!(10));
    assert_eq!(report["config"]["suites"], serde_json::json!(["algebra"]));
    std::fs::remove_file(cfg).ok();
    std::fs::remove_file(out1).ok();
}
