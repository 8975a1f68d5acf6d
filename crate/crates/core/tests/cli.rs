use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hyperlab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperlab"))
        .args(args)
        .env_remove("HYPERLAB_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn hausdorff_subcommand() {
    let out = hyperlab(&["hausdorff"], r#"{"A": [[0.0], [1.0]], "B": [[0.5]]}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["distance"], 0.25);

    let out = hyperlab(&["hausdorff", "--metric", "l2"], r#"{"A": [[1.0]], "B": [[]]}"#);
    assert_eq!(json(&out)["distance"], 0.5);
}

#[test]
fn project_subcommand() {
    let out = hyperlab(&["project"], r#"{"p": [0.5], "K": [[0.5]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["point"], serde_json::json!([0.5]));
    assert_eq!(v["weights"], serde_json::json!([1.0]));
    assert_eq!(v["objective"], 0.0);
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(hyperlab(&["hausdorff"], "{").status.code(), Some(2));
    assert_eq!(hyperlab(&["project"], r#"{"p": [2.0], "K": [[0.0]]}"#).status.code(), Some(2));
    assert_eq!(hyperlab(&["project", "--tol", "0"], r#"{"p": [0.1], "K": [[0.0]]}"#).status.code(), Some(2));
    assert_eq!(hyperlab(&["verify", "no-such-suite"], "").status.code(), Some(2));
    assert_eq!(hyperlab(&["verify", "contraction", "--trials", "0"], "").status.code(), Some(2));
    assert_eq!(hyperlab(&["verify", "contraction", "--depth", "17"], "").status.code(), Some(2));
    assert_eq!(hyperlab(&["frobnicate"], "").status.code(), Some(2));
}

#[test]
fn verify_reports_and_exit_status() {
    let out = hyperlab(&["verify", "eta-invariance", "--n", "4", "--depth", "6", "--trials", "50", "--seed", "7"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "eta-invariance");
    assert_eq!(v["trials"], 50);
    assert_eq!(v["pass"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));

    let out = hyperlab(&["verify", "zmap-convergence", "--trials", "20", "--bound", "0"], "");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn verify_all_fails_when_one_bound_is_zero() {
    // a zero bound is trivially met by the exact suites but not the others
    let out = hyperlab(&["verify", "all", "--trials", "5", "--bound", "0"], "");
    assert_eq!(out.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().any(|l| l["pass"] == false));
}

#[test]
fn factor_and_wedge_groups() {
    let out = hyperlab(&["factor", "verify", "--trials", "20"], "");
    assert_eq!(out.status.code(), Some(0));
    let suites: Vec<String> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["suite"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(suites, ["fiber-preservation", "surjectivity"]);

    let out = hyperlab(&["wedge", "verify", "--trials", "20"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 2);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperlab"));
        cmd.args(["verify", "eta-oracle", "--trials", "10"]).args(args).env_remove("HYPERLAB_SEED");
        if let Some(seed) = env {
            cmd.env("HYPERLAB_SEED", seed);
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("99"), &[]), run(None, &["--seed", "99"]));
    assert_ne!(run(Some("99"), &[]), run(None, &["--seed", "98"]));
    // the flag wins over the environment
    assert_eq!(run(Some("5"), &["--seed", "99"]), run(None, &["--seed", "99"]));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("hyperlab-cli-{}.jsonl", std::process::id()));
    let out = hyperlab(&["verify", "contraction", "--trials", "3", "--out", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, out.stdout);
}
