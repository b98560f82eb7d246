use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str], config: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_topogate"));
    cmd.current_dir(dir).args(args);
    if let Some(text) = config {
        std::fs::write(dir.join("config.json"), text).unwrap();
        cmd.args(["--config", "config.json"]);
    }
    cmd.output().unwrap()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("out.json")).unwrap()).unwrap()
}

#[test]
fn distance_of_the_smallest_toric_code() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"distance","code":{"family":"toric","L":2},"w_max":4}"#;
    let out = run(dir.path(), &["distance", "--out", "out.json"], Some(cfg));
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["result"]["d"], 2);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn transversal_t_on_the_color_code_is_level_three() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"classify","code":{"family":"color15"},"circuit":"transversal_T"}"#;
    let out = run(dir.path(), &["classify", "--out", "out.json"], Some(cfg));
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["result"]["level"], 3);
    assert_eq!(r["result"]["morphism"]["holds"], true);
}

#[test]
fn missing_task_is_a_validation_error_without_report() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["classify", "--out", "out.json"], Some(r#"{"code":{"family":"color15"}}"#));
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("out.json").exists());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["category"], "validation");
}

#[test]
fn unknown_fields_and_mismatched_tasks_are_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"distance","code":{"family":"toric","L":2},"colour":1}"#;
    assert_eq!(run(dir.path(), &["distance"], Some(cfg)).status.code(), Some(2));
    let cfg = r#"{"task":"distance","code":{"family":"toric","L":2}}"#;
    assert_eq!(run(dir.path(), &["classify"], Some(cfg)).status.code(), Some(2));
}

#[test]
fn randomized_presets_need_a_seed_and_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"classify","code":{"family":"toric","L":3},"circuit":{"preset":"random_local_clifford","h":2,"r":1}}"#;
    assert_eq!(run(dir.path(), &["classify"], Some(cfg)).status.code(), Some(2));
    let a = run(dir.path(), &["classify", "--seed", "11", "--json-only"], Some(cfg));
    let b = run(dir.path(), &["classify", "--seed", "11", "--json-only"], Some(cfg));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(dir.path(), &["classify", "--seed", "12", "--json-only"], Some(cfg));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn budget_exhaustion_is_a_resource_error() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"distance","code":{"family":"toric","L":5},"w_max":5,"budget":1000}"#;
    let out = run(dir.path(), &["distance"], Some(cfg));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn union_check_and_cleaning() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"region-check","code":{"family":"toric","L":6},"region":[0,1],"other_region":[40,41]}"#;
    let out = run(dir.path(), &["region-check", "--out", "out.json"], Some(cfg));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(dir.path())["result"]["union_correctable"], true);

    let cfg = r#"{"task":"clean","code":{"family":"toric","L":4},"logical":"+XI","region":[0,1,2]}"#;
    let out = run(dir.path(), &["clean", "--out", "out.json"], Some(cfg));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(dir.path())["result"]["sign"], 1);
}

#[test]
fn closure_reports_the_escaping_word() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"task":"closure","gates":["H","T"],"D":3,"step_bound":6}"#;
    let out = run(dir.path(), &["closure", "--out", "out.json"], Some(cfg));
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["result"]["closed_within_pd"], false);
    assert!(r["result"]["s_observed"].as_u64().unwrap() <= 6);
}

#[test]
fn demo_filters_and_rejects_unknown_names() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["demo", "--only", "cleaning"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS cleaning"));
    assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 1);
    assert_eq!(run(dir.path(), &["demo", "--only", "nope"], None).status.code(), Some(2));
}
