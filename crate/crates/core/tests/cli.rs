//! Exit codes and artifacts of the `drinfeld` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("drinfeld-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld")).args(args).output().unwrap()
}

#[test]
fn quotient_writes_json_and_dot() {
    let out = scratch("quotient");
    let o = run(&["quotient", "--q", "2", "--n", "1,1,0,1", "--flavor", "Gamma0Only", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("quotient.json")).unwrap()).unwrap();
    assert_eq!(json["genus"], 2);
    assert!(std::fs::read_to_string(out.join("quotient.dot")).unwrap().starts_with("graph quotient {"));
    let _ = std::fs::remove_dir_all(&out);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let o = run(&["quotient", "--q", "6", "--n", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["error"]["kind"], "InvalidFieldOrder");

    let o = run(&["quotient", "--q", "2", "--n", "0,0,0,0,0,0,0,1", "--depth-cap", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["error"]["kind"], "DepthCapExceeded");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["quotient", "--n", "0,1", "--depth-cap", "2"]).status.code(), Some(2));
    assert_eq!(run(&["quotient", "--n", "0,1", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["ihara", "--n", "0,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn congruence_table_header() {
    let out = scratch("cong");
    let o = run(&["congruences", "--n", "0,0,1", "--v", "1,1,1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("congruence_table.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("q,n,v,eigen_factor,resultant,candidate_l,verified"));
    assert!(csv.contains(",11,true"));
    let _ = std::fs::remove_dir_all(&out);
}
