//! End-to-end checks of the binary: output formats, exit codes, and the
//! b-file round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hypersum-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn coeffs_csv_matches_fixture_rows() {
    let out = run(&["coeffs", "c", "--max-m", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,k,value"));
    let values: Vec<&str> = lines.collect();
    assert_eq!(values.len(), 45);
    assert_eq!(values[0], "2,2,1");
    assert!(values.contains(&"10,3,-170"));
    assert!(values.contains(&"10,10,40320"));
}

#[test]
fn coeffs_output_is_route_independent_and_deterministic() {
    let baseline = run(&["coeffs", "c", "--max-m", "12", "--format", "json"]);
    assert!(baseline.status.success());
    for _ in 0..2 {
        let again = run(&["coeffs", "c", "--max-m", "12", "--format", "json"]);
        assert_eq!(baseline.stdout, again.stdout);
    }
    for route in ["recurrence", "invert-a", "binomial-system"] {
        let routed = run(&[
            "coeffs", "c", "--max-m", "12", "--format", "json", "--route", route,
        ]);
        assert!(routed.status.success());
        assert_eq!(baseline.stdout, routed.stdout, "route {route}");
    }
}

#[test]
fn coeffs_a_smallest_rows() {
    let out = run(&["coeffs", "a", "--max-m", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "m,l,value\n2,2,1\n3,2,0\n3,3,1\n");
}

#[test]
fn coeffs_a_rejects_bfile() {
    let out = run(&["coeffs", "a", "--max-m", "5", "--format", "bfile"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coeffs_json_serializes_values_as_strings() {
    let out = run(&["coeffs", "c", "--max-m", "4", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["kind"], "coeffs-c");
    assert_eq!(doc["params"]["max_m"], 4);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["entries"], serde_json::json!(["1", "-2", "2"]));
}

#[test]
fn bfile_single_entry() {
    let out = run(&["coeffs", "c", "--max-m", "2", "--format", "bfile"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1\n");
}

#[test]
fn hypersum_all_methods_agree() {
    let out = run(&["hypersum", "--m", "2", "--a", "1", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6); // header + 5 methods
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",14"), "line {line:?}");
    }
}

#[test]
fn hypersum_power_value() {
    let out = run(&[
        "hypersum", "--m", "7", "--a", "0", "--n", "2", "--method", "oracle",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "method,value\noracle,128\n");
}

#[test]
fn hypersum_rejects_inapplicable_method() {
    let out = run(&[
        "hypersum", "--m", "1", "--a", "0", "--n", "3", "--method", "psi",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hypersum", "--m", "2", "--a", "0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hypersum_low_m_uses_applicable_methods() {
    let out = run(&["hypersum", "--m", "1", "--a", "2", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // S_1^(2)(4) = sum of triangular numbers = 20
    assert_eq!(text, "method,value\noracle,20\nstirling2,20\n");
}

#[test]
fn verify_passes_and_reports() {
    let out = run(&[
        "verify", "--max-m", "8", "--max-a", "2", "--max-n", "8", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["pass"], true);
    let results = doc["results"].as_array().unwrap();
    assert!(results.iter().any(|r| r["name"] == "route-agreement"));
    assert!(results.iter().any(|r| r["name"] == "row-sum"));
    assert!(results.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_jobs_flag_is_accepted() {
    let a = run(&[
        "verify", "--max-m", "8", "--max-a", "2", "--max-n", "8", "--jobs", "4",
    ]);
    let b = run(&[
        "verify", "--max-m", "8", "--max-a", "2", "--max-n", "8", "--jobs", "1",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn conjecture_passes() {
    let out = run(&["conjecture", "--k-max", "2", "--m-max", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("k,parity,claim,points,pass,detail\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn oeis_first_values() {
    let out = run(&["oeis", "--max-m", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let expect: Vec<&str> = vec![
        "1 1", "2 0", "3 1", "4 1", "5 -2", "6 2", "7 0", "8 5", "9 -10", "10 6",
    ];
    assert_eq!(text.lines().collect::<Vec<_>>(), expect);
}

#[test]
fn oeis_last_triangle_entry() {
    let out = run(&["oeis", "--max-m", "10"]);
    let text = stdout(&out);
    assert_eq!(text.lines().last(), Some("45 40320"));
}

#[test]
fn oeis_roundtrip_compare() {
    let path = temp_path("roundtrip.bfile");
    let emitted = run(&["oeis", "--max-m", "10"]);
    std::fs::write(&path, &emitted.stdout).unwrap();
    let compared = run(&["oeis", "--max-m", "10", "--compare", path.to_str().unwrap()]);
    assert_eq!(compared.status.code(), Some(0));
    assert!(stdout(&compared).starts_with("match: 45 entries"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn oeis_compare_skips_comments_and_detects_mismatch() {
    let path = temp_path("mismatch.bfile");
    std::fs::write(&path, "# comment line\n1 1\n2 0\n3 99\n").unwrap();
    let out = run(&["oeis", "--max-m", "5", "--compare", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("mismatch at index 3"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn oeis_compare_shorter_file_matches_prefix() {
    let path = temp_path("prefix.bfile");
    std::fs::write(&path, "1 1\n2 0\n3 1\n").unwrap();
    let out = run(&["oeis", "--max-m", "10", "--compare", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("match: 3 entries"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn oeis_compare_rejects_garbage() {
    let path = temp_path("garbage.bfile");
    std::fs::write(&path, "1 1\nnot a bfile line\n").unwrap();
    let out = run(&["oeis", "--max-m", "5", "--compare", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();

    let missing = run(&[
        "oeis",
        "--max-m",
        "5",
        "--compare",
        "/nonexistent/path.bfile",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["coeffs", "c", "--max-m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["coeffs", "c", "--bogus-flag"]).status.code(), Some(2));
    assert_eq!(run(&["not-a-subcommand"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--max-n", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["hypersum", "--m", "2", "--a", "0", "--n", "3", "--format", "bfile"])
            .status
            .code(),
        Some(2)
    );
}
