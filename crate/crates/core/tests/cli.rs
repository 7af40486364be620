use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mickelsson"))
}

fn suite(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../suites").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_examples() {
    let (code, out) = run(&["verify", "isis", "--m", "2", "--n", "1", "--mu", "1/3,0", "--nu", "0,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w["scalar"] == "1/4"));
    assert_eq!(run(&["verify", "phi", "--d-max", "4", "--samples", "10", "--seed", "1"]).0, 0);
    assert_eq!(run(&["verify", "hecke", "--m", "1", "--N", "3"]).0, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "no-such-check"]).0, 2);
    assert_eq!(run(&["verify", "phi", "--mutation", "bogus"]).0, 2);
    let dir = std::env::temp_dir().join(format!("mickelsson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"checks": [{"check": "phi", "extra": 1}]}"#).unwrap();
    assert_eq!(run(&["suite", bad.to_str().unwrap()]).0, 2);
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"checks": []}"#).unwrap();
    assert_eq!(run(&["suite", empty.to_str().unwrap()]).0, 0);
    let (code, out) = run(&["suite", suite("mutation.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("\"lhs\""));
    // a computational error is reported, not a configuration error
    assert_eq!(run(&["verify", "isis", "--mu", "1,0"]).0, 1);
    assert_eq!(run(&["verify", "isis", "--mu", "1/3"]).0, 2);
}

#[test]
fn json_output_and_determinism() {
    let dir = std::env::temp_dir().join(format!("mickelsson-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = suite("examples.json");
    let a = dir.join("a.json");
    let (c1, o1) = run(&["suite", path.to_str().unwrap(), "--jobs", "1", "--no-timing", "--json", a.to_str().unwrap()]);
    let (c2, o2) = run(&["suite", path.to_str().unwrap(), "--jobs", "3", "--no-timing"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    assert_eq!(std::fs::read_to_string(&a).unwrap(), o1);
}

#[test]
fn default_suite_passes() {
    let (code, out) = run(&["suite", suite("default.json").to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], 17);
}
