//! Runs the built binary end to end.

use std::process::{Command, Output};

fn iwsaa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwsaa"))
        .args(args)
        .env_remove("IWSAA_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn solve_prints_certificate() {
    let v = stdout_json(&iwsaa(&["solve", "--problem", "unimodal-1d", "--n", "300", "--seed", "3"]));
    assert_eq!(v["n"], 300);
    if v["status"] == "optimal" {
        assert!(v["certificate"]["relative_gap"].as_f64().unwrap() <= 1e-7);
    }
}

#[test]
fn counterexample_json() {
    let v = stdout_json(&iwsaa(&["counterexample", "--alpha", "2", "--n", "500", "--seed", "4"]));
    assert_eq!(v["success"], true);
    assert_eq!(v["upper_bound"], 0.75);
}

#[test]
fn complexity_csv_layout() {
    let out = iwsaa(&["--format", "csv", "complexity", "--n", "30", "--d", "2", "--reps", "20"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,d,reps,naive_mean,naive_se,naive_exact,reduced_mean,reduced_se,reduced_exact");
    assert!(lines[1].starts_with("30,2,20,"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_iwsaa"))
        .args(["--format", "csv", "converge", "--problem", "unimodal-1d", "--n", "250", "--reps", "2"])
        .env("IWSAA_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn write_problems_then_solve_from_file() {
    let dir = tempfile::tempdir().unwrap();
    assert!(iwsaa(&["write-problems", dir.path().to_str().unwrap()]).status.success());
    let file = dir.path().join("orthounimodal-4d.json");
    let sampler = r#"{"kind":"uniform_ball_sector","center":[0,0,0,0],"radius":2.5}"#;
    let v = stdout_json(&iwsaa(&[
        "solve",
        "--problem",
        file.to_str().unwrap(),
        "--sampler",
        sampler,
        "--n",
        "150",
        "--no-reduce",
    ]));
    assert_eq!(v["shape_rows"], v["naive_pairs"]);
}

#[test]
fn unknown_problem_fails_cleanly() {
    let out = iwsaa(&["solve", "--problem", "no-such-problem"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-problem"));
}
