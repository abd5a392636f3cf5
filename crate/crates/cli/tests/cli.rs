use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn pfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfusion")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_s4() {
    let out = pfusion(&["analyze", "--group", &data("s4.json"), "--prime", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["group"]["order"], 24);
    assert_eq!(v["normal"], false);
    let ess = v["essentials"].as_array().unwrap();
    assert_eq!(ess.len(), 1);
    assert_eq!(ess[0]["subgroup"].as_array().unwrap().len(), 4);
    // V4 is normal in S4, so it is strongly closed
    let closed: Vec<usize> = v["strongly_closed"].as_array().unwrap().iter().map(|s| s.as_array().unwrap().len()).collect();
    assert_eq!(closed, vec![1, 4, 8]);
    assert_eq!(v["normality"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_sl23_and_trivial() {
    let v = json(&pfusion(&["analyze", "--group", &data("sl23.json"), "--prime", "2"]));
    assert_eq!(v["normal"], true);
    assert!(v["essentials"].as_array().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let triv = dir.path().join("trivial.json");
    std::fs::write(&triv, r#"{"kind":"catalog","name":"cyclic","params":{"n":1}}"#).unwrap();
    let out = pfusion(&["analyze", "--group", triv.to_str().unwrap(), "--prime", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["normal"], true);
    assert!(v["essentials"].as_array().unwrap().is_empty());
    assert!(v["representatives"].as_array().unwrap().is_empty());
}

#[test]
fn pgroup_selector_restricts() {
    // P = V4, generated by two of its involutions
    let v = json(&pfusion(&["analyze", "--group", &data("s4.json"), "--prime", "2", "--pgroup", "3,15"]));
    assert_eq!(v["context"]["p_subgroup"].as_array().unwrap().len(), 4);
    assert_eq!(v["normal"], true);
}

#[test]
fn factorize_center_fusion() {
    let out = pfusion(&["factorize", "--group", &data("s4.json"), "--prime", "2", "--source", "3", "--target", "15"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verified"], true);
    let steps = v["chain"]["steps"].as_array().unwrap();
    assert!(steps.len() > 1);
    assert!(steps.iter().any(|s| s["subgroup"].as_array().unwrap().len() == 4));

    let id = json(&pfusion(&["factorize", "--group", &data("s4.json"), "--prime", "2", "--source", "3", "--target", "3"]));
    assert_eq!(id["chain"]["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let s4 = data("s4.json");
    // not fused: the center and a reflection outside V4
    let out = pfusion(&["factorize", "--group", &s4, "--prime", "2", "--source", "3", "--target", "19"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no such morphism"));

    let out = pfusion(&["analyze", "--group", &s4, "--prime", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let out = pfusion(&["analyze", "--group", &s4, "--prime", "2", "--cap-override", "lattice=3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let out = pfusion(&["analyze", "--group", &s4, "--prime", "2", "--cap-override", "nonsense=1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = pfusion(&["analyze", "--group", "/no/such/file.json", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_file_is_not_written_on_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let out = pfusion(&["analyze", "--group", &data("s4.json"), "--prime", "3", "--out", p, "--cap-override", "lattice=1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!path.exists());
    let out = pfusion(&["normality", "--group", &data("s4.json"), "--prime", "2", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn frobenius_and_text_format() {
    let v = json(&pfusion(&["frobenius", "--group", &data("s4.json"), "--prime", "2"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["report"]["p_nilpotent"], false);
    let out = pfusion(&["normality", "--group", &data("sl23.json"), "--prime", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("methods agree: true"));
}

#[test]
fn shipped_suite_passes() {
    let out = pfusion(&["verify-suite", &data("suite.json"), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.contains("PASS [strong resistance] SL(3,3) at 3"));
    assert!(text.contains("PASS [cyclic subgroup count]"));
    assert!(text.ends_with(" passed, 0 failed\n"));
}

#[test]
fn corrupted_and_empty_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let suite: Value = serde_json::from_str(&std::fs::read_to_string(data("suite.json")).unwrap()).unwrap();
    let mut entry = suite["entries"].as_array().unwrap().iter().find(|e| e["name"] == "S4 at 2, Sylow D8").unwrap().clone();
    entry["expect"]["normal"] = Value::Bool(true);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::json!({ "entries": [entry] }).to_string()).unwrap();
    let out = pfusion(&["verify-suite", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["failed"], 1);
    assert!(v["assertions"].as_array().unwrap().iter().any(|a| a["lemma"] == "normality" && a["passed"] == false));

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"entries": []}"#).unwrap();
    let out = pfusion(&["verify-suite", empty.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], 0);
    assert_eq!(v["failed"], 0);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r#"{"entries": [ {"name": 3} ]}"#).unwrap();
    let out = pfusion(&["verify-suite", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}
