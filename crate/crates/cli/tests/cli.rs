//! End-to-end checks of the skit binary: each subcommand on a small input.

use std::fs;
use std::process::Command;

fn skit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skit"))
}

fn write_four_lines_problem(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("p.json");
    fs::write(&path, r#"{"k":2,"n":4,"conditions":[[2,4],[2,4],[2,4],[2,4]]}"#).unwrap();
    path
}

#[test]
fn bounds_sigma() {
    let out = skit().args(["bounds", "sigma", "--k", "2", "--n", "5"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["kind"], "Sigma");
}

#[test]
fn bounds_imbalance_with_diagrams() {
    let out = skit()
        .args([
            "bounds",
            "imbalance",
            "--k",
            "2",
            "--n",
            "5",
            "--alpha",
            "3,5",
            "--beta",
            "3,5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 1);
    assert!(v["diagrams"]["alpha"].as_str().unwrap().contains("[]"));
}

#[test]
fn bounds_factor_gap_set() {
    let out = skit()
        .args(["bounds", "factor", "--k", "4", "--n", "8", "--osculation", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 0);
    assert!(v["note"].as_str().unwrap().contains("[0, 4, 8, 20]"));
}

#[test]
fn bounds_mod4() {
    let dir = std::env::temp_dir().join("skit-cli-mod4");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sym.json");
    fs::write(
        &path,
        r#"{"k":4,"n":8,"conditions":[[2,3,4,8],[4,6,7,8],[4,6,7,8],[4,6,7,8],[4,6,7,8],[4,6,7,8],[4,6,7,8],[4,6,7,8]]}"#,
    )
    .unwrap();
    let out = skit()
        .args(["bounds", "mod4", "--problem", path.to_str().unwrap(), "--complex-count", "20"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["prop_inequality_value"], 3);
    assert_eq!(v["applies_prop"], true);
    assert_eq!(v["predicted_residue"], 0);
}

#[test]
fn solve_and_build_agree_on_four_lines() {
    let dir = std::env::temp_dir().join("skit-cli-solve");
    fs::create_dir_all(&dir).unwrap();
    let problem = write_four_lines_problem(&dir);
    let out = skit()
        .args([
            "solve",
            "--problem",
            problem.to_str().unwrap(),
            "--points",
            "inf,0,1,2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["complex_count"], 2);
    assert_eq!(v["real_count"], 2);

    let out = skit()
        .args([
            "system",
            "build",
            "--formulation",
            "det",
            "--problem",
            problem.to_str().unwrap(),
            "--points",
            "inf,0,1,2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("vars: x1 x2\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn experiment_writes_jsonl_and_table() {
    let dir = std::env::temp_dir().join("skit-cli-exp");
    fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
  "problem": {"k":2,"n":4,"conditions":[[2,4],[2,4],[2,4],[2,4]]},
  "osculation": [4],
  "trials": 3,
  "seed": 7,
  "coords": "pair"
}"#,
    )
    .unwrap();
    let jsonl = dir.join("run.jsonl");
    let out = skit()
        .args([
            "experiment",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            jsonl.to_str().unwrap(),
            "--table",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.contains("real,r=(4)"));
    assert!(table.contains("2,3"));
    let lines: Vec<String> =
        fs::read_to_string(&jsonl).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for line in &lines {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["status"], "ok");
        assert_eq!(rec["real_count"], 2);
    }
}

#[test]
fn certify_round_trip_through_dump() {
    let dir = std::env::temp_dir().join("skit-cli-cert");
    fs::create_dir_all(&dir).unwrap();
    let problem = write_four_lines_problem(&dir);
    let sys = dir.join("pd.json");
    let out = skit()
        .args([
            "system",
            "build",
            "--formulation",
            "pd",
            "--problem",
            problem.to_str().unwrap(),
            "--points",
            "inf,0,1,2",
            "--json",
            "--out",
            sys.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    // a deliberately bad point: reported as not certified, no crash
    let pts = dir.join("pts.json");
    fs::write(&pts, r#"[[[2.0,0.1],[1.0,0.0],[0.5,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0]]]"#).unwrap();
    let out = skit()
        .args([
            "certify",
            "--system",
            sys.to_str().unwrap(),
            "--points",
            pts.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
}
