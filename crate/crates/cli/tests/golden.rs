//! Golden-file tests over the sample corpus. Set `UPDATE_GOLDEN=1` to rewrite
//! the expected outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn samples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("samples")
}

fn qml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qml"))
        .current_dir(samples())
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = qml(&full);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{name}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected, "{name} drifted");
    // A second run is byte-identical.
    assert_eq!(qml(&full).stdout, out.stdout, "{name} is not deterministic");
}

#[test]
fn check_outputs() {
    golden("check_box", &["check", "--model", "chain.json", "--world", "1", "--formula", "box P(0)"], 0);
    golden("check_atom", &["check", "--model", "chain.json", "--world", "1", "--formula", "P(0)"], 0);
}

#[test]
fn successor_outputs() {
    golden("decide_true", &["decide-succ", "ex x (s(x) = s(s(0)))"], 0);
    golden("decide_false_qe", &["decide-succ", "all x ex y (x = s(y))", "--show-qe"], 1);
}

#[test]
fn tc_outputs() {
    golden("tc_yes", &["tc", "--premises", "premises.txt", "--goal", "@B"], 0);
    golden("tc_no", &["tc", "--premises", "premises.txt", "--goal", "@P(0)"], 1);
}

#[test]
fn identity_outputs() {
    golden(
        "identity_term",
        &["identity-formula", "--left", "s(u) + v", "--right", "s(s(w)) + v", "--uvars", "u", "--wvars", "w", "--shared", "v"],
        0,
    );
    golden(
        "identity_formula",
        &["identity-formula", "--left", "@P(u) & u = 0", "--right", "@P(s(w)) & s(w) = 0", "--uvars", "u", "--wvars", "w", "--simplify"],
        0,
    );
}

#[test]
fn activation_outputs() {
    golden("activated", &["activated", "--context", "context.json", "--world", "1", "--stage", "3", "--brute", "6"], 0);
    golden("not_activated", &["activated", "--context", "context.json", "--world", "1", "--stage", "2"], 1);
}

#[test]
fn embedding_outputs() {
    golden("embed_s4", &["embed", "--model", "constant.json", "--sentence", "box P(0)", "--world", "1", "--mode", "s4"], 0);
    golden("embed_s3", &["embed", "--model", "expanding.json", "--sentence", "box all x P(x)", "--world", "1", "--mode", "s3"], 0);
    let out = qml(&["--format", "json", "embed", "--model", "constant.json", "--sentence", "box P(0)", "--world", "1", "--mode", "s4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["obligations"].as_array().unwrap().is_empty());
}

#[test]
fn simulation_outputs() {
    golden("simulate_switch", &["simulate", "--oracle", "oracle.json", "--horizon", "30"], 0);
    golden("simulate_consistent", &["simulate", "--oracle", "consistent.json", "--horizon", "10"], 0);
}

#[test]
fn files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let out = qml(&["simulate", "--oracle", "oracle.json", "--horizon", "12", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(v["transition"]["i"], 1);
    assert_eq!(v["h"].as_array().unwrap().len(), 13);
    let bundle = dir.path().join("bundle.json");
    let out = qml(&["embed", "--model", "constant.json", "--sentence", "box P(0)", "--world", "1", "--out", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&bundle).unwrap()).unwrap();
    assert_eq!(v["mode"], "s4");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"worlds\": [1], ").unwrap();
    for args in [
        vec!["check", "--model", "missing.json", "--world", "1", "--formula", "T"],
        vec!["check", "--model", bad.to_str().unwrap(), "--world", "1", "--formula", "T"],
        vec!["check", "--model", "chain.json", "--world", "1", "--formula", "box (P(0)"],
        vec!["decide-succ", "ex x x < 0"],
        vec!["embed", "--model", "chain.json", "--sentence", "P(0)", "--world", "2"],
        vec!["simulate", "--oracle", "oracle.json", "--horizon", "0"],
    ] {
        let out = qml(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = qml(&["check", "--model", bad.to_str().unwrap(), "--world", "1", "--formula", "T"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("bad.json") && msg.contains("line 1"), "{msg}");
}
