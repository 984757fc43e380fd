use std::path::PathBuf;
use std::process::{Command, Output};

fn uawa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uawa")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("uawa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn inadmissible_order_is_config_error() {
    for d in ["1", "2", "4"] {
        let out = uawa(&["verify", "--d", d]);
        assert_eq!(out.status.code(), Some(2), "d={d}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn unknown_suite_is_config_error() {
    assert_eq!(uawa(&["verify", "--d", "3", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(uawa(&["verify", "--d", "3", "--degree-cap", "0"]).status.code(), Some(2));
}

#[test]
fn verify_report_is_reproducible() {
    let args = ["verify", "--d", "3,5", "--suite", "central,qracah,basis", "--seed", "11"];
    let a = uawa(&args);
    let b = uawa(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_writes_to_file() {
    let path = tmp("report.json");
    let out = uawa(&["verify", "--d", "6", "--suite", "central", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["entries"].as_array().unwrap().len(), 14);
}

#[test]
fn cheb_coefficients() {
    let out = uawa(&["cheb", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!([2, 0, -4, 0, 1]));
    let out = uawa(&["cheb", "--d", "7", "--a", "-2*q^3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_reports_type() {
    let out = uawa(&["qracah", "classify", "--d", "5", "--a", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "O(2)");
    assert_eq!(v["thetas"].as_array().unwrap().len(), 5);
}

#[test]
fn normal_form_orders_letters() {
    let out = uawa(&["nf", "--d", "5", "A*B - A*B"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");
    let out = uawa(&["nf", "--d", "5", "B*A"]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("A*B") && !s.contains("B*A"), "{s}");
}

#[test]
fn sweep_then_analyze() {
    let path = tmp("catalog.jsonl");
    let out = uawa(&["gen", "sweep", "--d", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let entries: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!entries.is_empty());
    let e = entries.iter().find(|e| e["irreducible"] == true && e["dim"] == 3).expect("a tight module");
    let bundle = tmp("bundle.json");
    std::fs::write(&bundle, e["bundle"].to_string()).unwrap();
    let out = uawa(&["analyze", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["algebra_dim"], 9);
}
