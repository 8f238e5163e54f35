use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvereg")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curvereg-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_prints_summary_and_json() {
    let file = corpus().join("triangle.json");
    let o = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("class Free"), "{}", stdout(&o));

    let dir = scratch("analyze");
    let out = dir.join("r.json");
    let o = run(&["analyze", file.to_str().unwrap(), "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["invariants"]["exponents"], serde_json::json!([1, 1]));
    assert!(v["timing"]["seconds"].is_number());
    let saved: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(saved["report"], v["report"]);
}

#[test]
fn verify_selects_checks() {
    let file = corpus().join("braid-plus-line.json");
    let o = run(&["verify", file.to_str().unwrap(), "--theorems", "thm1,rkS"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("thm1") && text.contains("rkS"), "{text}");
    assert!(!text.contains("lem3"));

    let o = run(&["verify", file.to_str().unwrap(), "--theorems", "thm1,rkS", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);

    let o = run(&["verify", file.to_str().unwrap(), "--theorems", "thm7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn prime_field_runs_are_heuristic() {
    let file = corpus().join("two-conics.json");
    let o = run(&["--field", "Fp", "verify", file.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");
    assert!(String::from_utf8_lossy(&o.stderr).contains("Hilbert data only"));
    let o = run(&["--field", "Fp", "--p", "12", "analyze", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    // A mismatching expectation is a failure.
    let wrong = dir.join("wrong.json");
    fs::write(&wrong, r#"{"name": "t", "components": ["x", "y", "z"], "expected": {"invariants": {"tau": 4}}}"#).unwrap();
    assert_eq!(run(&["analyze", wrong.to_str().unwrap()]).status.code(), Some(1));
    // Input errors.
    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"name": "t", "components": ["x^2"]}"#).unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, "{").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    let big = corpus().join("braid-plus-line.json");
    assert_eq!(run(&["--max-degree", "5", "analyze", big.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn corpus_runs() {
    let o = run(&["corpus", "run", "--dir", corpus().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fail"], 0);
    assert_eq!(v["error"], 0);

    let empty = scratch("empty");
    let o = run(&["corpus", "run", "--dir", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let broken = scratch("broken");
    fs::copy(corpus().join("triangle.json"), broken.join("triangle.json")).unwrap();
    fs::write(broken.join("broken.json"), "not json").unwrap();
    let o = run(&["corpus", "run", "--dir", broken.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let failing = scratch("failing");
    fs::write(failing.join("t.json"), r#"{"name": "t", "components": ["x", "y", "z"], "expected": {"invariants": {"tau": 4}}}"#)
        .unwrap();
    let o = run(&["corpus", "run", "--dir", failing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    assert_ne!(run(&["corpus", "run", "--dir", "/nonexistent/curvereg"]).status.code(), Some(0));
}
