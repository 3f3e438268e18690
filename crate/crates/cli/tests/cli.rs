use std::process::{Command, Output};

use serde_json::Value;

fn clutch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clutch")).args(args).output().expect("spawn clutch")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_passes_and_reports_checks() {
    for suite in ["series", "node", "group", "elliptic", "basis"] {
        let out = clutch(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
        let v = json(&out);
        let checks = v["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["status"] == "pass" && c["id"].as_str().unwrap().starts_with(suite)));
    }
}

#[test]
fn verify_is_deterministic() {
    let a = clutch(&["verify", "group", "--seed", "7", "-N", "3", "-K", "5"]);
    let b = clutch(&["verify", "group", "--seed", "7", "-N", "3", "-K", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&clutch(&["verify", "series"]));
    assert!(plain.get("wall_ms").is_none());
    let timed = json(&clutch(&["verify", "series", "--timing"]));
    assert!(timed["wall_ms"].as_f64().is_some());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(clutch(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(clutch(&["emit", "nope"]).status.code(), Some(2));
    assert_eq!(clutch(&[]).status.code(), Some(2));
    let bad = clutch(&["emit", "period", "--genus", "0,1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn emit_witt_text() {
    let out = clutch(&["emit", "witt", "-i", "1", "-j", "-1", "-N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2·q·M_0");
}

#[test]
fn emit_recursion_json() {
    let v = json(&clutch(&["emit", "recursion", "-N", "6", "--format", "json"]));
    let a4 = &v["a"]["4"]["q"];
    assert_eq!(a4.as_array().unwrap().len(), 1);
    assert_eq!(a4[0]["deg"], 4);
    assert_eq!(a4[0]["num"], "1");
    assert_eq!(a4[0]["mono"]["c2(τ2)"], 1);
}

#[test]
fn emit_period_latex_mentions_dx() {
    let out = clutch(&["emit", "period", "-N", "4", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("dx"), "{s}");
}
