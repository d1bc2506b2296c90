use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ttdeform"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn eval_is_deterministic() {
    let args = ["eval", "holo", "--seed", "theta3", "--alpha", "0.05,0.2", "--grid", "0.6:1.4:3,-0.2:0.2:2"];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    let (_, b) = run(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn one_point_csv_scan() {
    let (code, out) = run(&["scan", "--seed", "eta-inverse", "--alpha", "0.1", "--grid", "1:1:1", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("alpha,d1,d2,re,im"));
    // 17 significant digits
    assert!(lines[1].starts_with("1.0000000000000001e-1,1.0000000000000000e0,"));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["eval", "holo", "--seed", "theta3", "--grid", "1:2"]).0, 2);
    assert_eq!(run(&["eval", "holo", "--seed", "nosuch", "--delta", "1"]).0, 2);
    assert_eq!(run(&["verify", "nosuch"]).0, 2);
    assert_eq!(run(&["eval", "holo", "--seed", "theta3", "--delta", "1", "--tol", "-1"]).0, 2);
}

#[test]
fn failed_rows_exit_one() {
    // left of the admissible window
    assert_eq!(run(&["eval", "holo", "--seed", "eta-inverse", "--alpha", "0.1", "--delta", "0.05"]).0, 1);
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out.json");
    std::fs::write(&cfg, r#"{"seed": "eta24", "alpha": [0.2], "delta": "1.1+0.1i", "format": "csv"}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let (code, text) = run(&["--config", c, "eval", "holo", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["status"], "ok");
    std::fs::write(&cfg, r#"{"seed": "eta24", "unknown-key": 1}"#).unwrap();
    assert_eq!(run(&["--config", c, "eval", "holo", "--delta", "1"]).0, 2);
}

#[test]
fn json_seed_file() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("seed.json");
    std::fs::write(
        &seed,
        r#"{"kind": "holo", "name": "two-terms", "weight": 0.5, "terms": [{"lambda": 0.5, "a": [1, 0]}, {"lambda": 1.5, "a": [2, 0]}]}"#,
    )
    .unwrap();
    let (code, out) = run(&["eval", "holo", "--seed", seed.to_str().unwrap(), "--delta", "1", "--alpha", "0"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let want = (-std::f64::consts::PI).exp() + 2.0 * (-3.0 * std::f64::consts::PI).exp();
    assert!((v["rows"][0]["re"].as_f64().unwrap() - want).abs() < 1e-15);
}

#[test]
fn verify_passing_suite() {
    let (code, out) = run(&["verify", "eisenstein-holo"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v.get("wall_time_s").is_none());
}

#[test]
fn mellin_product_row() {
    let (code, out) = run(&["mellin", "--seed", "theta3", "--s", "2", "--alpha", "0.3", "--format", "csv"]);
    assert_eq!(code, 0, "{out}");
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let residual: f64 = row[9].parse().unwrap();
    assert!(residual < 1e-5);
}
