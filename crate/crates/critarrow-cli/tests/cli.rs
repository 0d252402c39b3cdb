//! End-to-end tests of the command-line surface: flags, exit codes, JSON
//! shape, and byte stability.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_critarrow"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn analyze_reference_cone_json() {
    let out = run(&["analyze", "--cone", "1,0,0;0,1,0;1,1,2", "--w", "1,1,1"]);
    let v = stdout_json(&out);
    assert_eq!(v["dim_tau"], 1);
    assert_eq!(v["d_prime"], 5);
    assert_eq!(v["crit"]["1"], serde_json::json!([[-1, 0, 1], [-1, 1, 0]]));
    assert_eq!(v["crit"]["2"], serde_json::json!([[0, -1, 1], [1, -1, 0]]));
    assert_eq!(v["crit"]["3"], serde_json::json!([[0, 1, -1], [1, 0, -1]]));
    assert_eq!(v["discrepancy"], "1/2");
    assert_eq!(v["level_one_found"], "yes");

    let out = run(&["analyze", "--cone", "1,0,0;0,1,0;1,1,2", "--w", "1,2,2"]);
    let v = stdout_json(&out);
    assert_eq!(v["dim_tau"], 2);
    assert_eq!(v["crit"]["2"], serde_json::json!([[2, 0, -1], [4, 0, -2]]));
    assert_eq!(v["mu"], serde_json::json!([2, 3]));
}

#[test]
fn analyze_smooth_ray_case() {
    let out = run(&["analyze", "--cone", "1,0;0,1", "--w", "1,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["dim_tau"], 1);
    assert_eq!(v["dim_mu"], 1);
}

#[test]
fn analyze_output_is_byte_stable() {
    let a = run(&["analyze", "--cone", "1,0,0;0,1,0;1,1,2", "--w", "1,1,1"]);
    let b = run(&["analyze", "--cone", "1,0,0;0,1,0;1,1,2", "--w", "1,1,1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_text_format() {
    let out = run(&[
        "analyze",
        "--cone",
        "1,0,0;0,1,0;1,1,2",
        "--w",
        "1,1,1",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("dim tau"));
    assert!(text.contains("1/2"));
}

#[test]
fn analyze_domain_errors_exit_2() {
    // malformed vector
    let out = run(&["analyze", "--cone", "1,0;0,x", "--w", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
    // w outside the cone
    let out = run(&["analyze", "--cone", "1,0;0,1", "--w", "-1,0"]);
    assert_eq!(out.status.code(), Some(2));
    // degenerate generators
    let out = run(&["analyze", "--cone", "1,0;1,0", "--w", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limit_exits_3() {
    let out = run(&[
        "analyze",
        "--cone",
        "1,0,0;0,1,0;1,1,2",
        "--w",
        "1,1,1",
        "--max-points",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn quotient_order_fourteen() {
    let out = run(&["quotient", "14:1,9,11", "--w", "7/14,7/14,7/14"]);
    let v = stdout_json(&out);
    assert_eq!(v["group_order"], 14);
    assert_eq!(v["classification"], "case5");
    assert_eq!(v["analysis"]["volume"]["vol"], "2/7");
    assert_eq!(v["analysis"]["volume"]["guarantee"], false);
    assert_eq!(v["analysis"]["level_one_found"], "no");
    assert_eq!(v["analysis"]["dim_tau"], 1);
}

#[test]
fn quotient_case_four() {
    let out = run(&["quotient", "8:1,5,6"]);
    let v = stdout_json(&out);
    assert_eq!(v["classification"], "case4");
    assert_eq!(v["group_order"], 8);
    assert_eq!(v["analysis"], serde_json::Value::Null);
}

#[test]
fn quotient_trivial_group() {
    let out = run(&["quotient", "1:0,0,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["group_order"], 1);
    assert_eq!(v["singularity"], "smooth");
    assert_eq!(
        v["cone"],
        serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    );
}

#[test]
fn quotient_rejects_non_lattice_point() {
    let out = run(&["quotient", "14:1,9,11", "--w", "1/3,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lattice"));
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let args_base = [
        "scan",
        "--template",
        "1,0,0;x1,y1,z1;x2,y2,z2",
        "--range",
        "0..2",
        "--filter",
        "y1<=z1",
        "--filter",
        "y2<=z2",
    ];
    let mut one = args_base.to_vec();
    one.extend(["--jobs", "1"]);
    let mut four = args_base.to_vec();
    four.extend(["--jobs", "4"]);
    let a = run(&one);
    let b = run(&four);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "records depend on worker count");
    // every record is a JSON document with dim_tau 1 on this family
    for line in String::from_utf8_lossy(&a.stdout).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("JSONL record");
        assert_eq!(v["dim_tau"], 1);
        assert_eq!(v["error"], serde_json::Value::Null);
    }
    let summary = String::from_utf8_lossy(&a.stderr);
    assert!(summary.contains("records"));
}

#[test]
fn scan_writes_output_file() {
    let dir = std::env::temp_dir().join(format!("critarrow-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("records.jsonl");
    let out = run(&[
        "scan",
        "--template",
        "1,0,0;0,1,0;1,1,q",
        "--range-for",
        "q=2..3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // summary on stdout when records go to a file
    assert!(String::from_utf8_lossy(&out.stdout).contains("records"));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.lines().count() >= 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn env_var_sets_default_jobs() {
    let out = bin()
        .args(["scan", "--template", "1,0;y,2", "--range", "0..1"])
        .env("CRITARROW_JOBS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 worker(s)"));
}
