use std::process::{Command, Output};

use serde_json::Value;

fn crepant_kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crepant-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn analyze_json(n: u32, d: u32) -> Output {
    crepant_kit(&[
        "analyze",
        "--n",
        &n.to_string(),
        "--d",
        &d.to_string(),
        "--max-degree",
        "6",
        "--format",
        "json",
    ])
}

fn strip_timing(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn exit_codes_follow_divisibility() {
    for n in 1..=6u32 {
        for d in 1..=6u32 {
            let out = analyze_json(n, d);
            let expected = if n % d == 0 { 0 } else { 1 };
            assert_eq!(out.status.code(), Some(expected), "n={n} d={d}");
            let report: Value = serde_json::from_slice(&out.stdout).unwrap();
            let verdict = report["verdict"].as_str().unwrap();
            if n % d == 0 {
                assert_eq!(verdict, "pass");
            } else {
                assert_eq!(verdict, "hypothesis-violated");
            }
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(analyze_json(0, 2).status.code(), Some(2));
    assert_eq!(analyze_json(2, 0).status.code(), Some(2));
    assert_eq!(crepant_kit(&["analyze", "--n", "two", "--d", "2"]).status.code(), Some(2));
    let non_scalar = crepant_kit(&["analyze", "--n", "2", "--d", "2", "--weights", "1,0"]);
    assert_eq!(non_scalar.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&non_scalar.stderr).contains("scalar"));
}

#[test]
fn scalar_weights_are_accepted() {
    let out = crepant_kit(&["analyze", "--n", "2", "--d", "2", "--weights", "3,-1", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_is_deterministic_up_to_timing() {
    let a = analyze_json(4, 2);
    let b = analyze_json(4, 2);
    assert_eq!(
        strip_timing(&String::from_utf8(a.stdout).unwrap()),
        strip_timing(&String::from_utf8(b.stdout).unwrap())
    );
}

#[test]
fn crepant_case_reports_no_blocks() {
    let out = analyze_json(2, 2);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], "crepant-kit/instance-report/v1");
    let checks = report["checks"].as_array().unwrap();
    let sod = checks.iter().find(|c| c["name"] == "sod").unwrap();
    assert_eq!(sod["status"], "pass");
    assert!(sod["data"].to_string().contains("T_0 = D^b(X~)"));
}

#[test]
fn text_report_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = crepant_kit(&["analyze", "--n", "4", "--d", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("pass"), "{text}");
    assert!(!text.contains("\x1b["));
}

#[test]
fn thread_cap_does_not_change_results() {
    let capped = Command::new(env!("CARGO_BIN_EXE_crepant-kit"))
        .args(["analyze", "--n", "6", "--d", "3", "--max-degree", "5", "--format", "json"])
        .env("CREPANT_KIT_THREADS", "1")
        .output()
        .unwrap();
    let free = crepant_kit(&["analyze", "--n", "6", "--d", "3", "--max-degree", "5", "--format", "json"]);
    assert_eq!(capped.status.code(), Some(0));
    assert_eq!(
        strip_timing(&String::from_utf8(capped.stdout).unwrap()),
        strip_timing(&String::from_utf8(free.stdout).unwrap())
    );
}

#[test]
fn molien_subcommand() {
    let out = crepant_kit(&["molien", "--d", "3", "--weights", "1,1,2", "--max-degree", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["agreement"], true);
    let invariants: Vec<u64> = report["series"][0]["covariant"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(invariants, [1, 0, 2, 5, 3, 7, 12]);

    let scalar = crepant_kit(&["molien", "--d", "2", "--n", "2", "--max-degree", "4"]);
    assert_eq!(scalar.status.code(), Some(0));
    assert_eq!(crepant_kit(&["molien", "--d", "2", "--max-degree", "4"]).status.code(), Some(2));
}
