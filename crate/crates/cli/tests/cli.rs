use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const HEX: &str = r#"{
  "dimension": 2,
  "base_rows": [["1"]],
  "offset": ["1/2"],
  "parameter": "3/4",
  "group": ["-1 2", "1 -2"]
}"#;

const BCC: &str = r#"{
  "dimension": 3,
  "base_rows": [["1", "0"], ["0", "1"]],
  "offset": ["1/2", "1/2"],
  "parameter": "1/2",
  "group": ["-1 2 3", "2 1 3", "1 2 -3"]
}"#;

fn spec(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn lamiq(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lamiq"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn doc(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn g_for_small_lattices() {
    let dir = tempfile::tempdir().unwrap();
    let hex = spec(dir.path(), "hex.json", HEX);
    let d = doc(&lamiq(&["g", "--spec", hex.to_str().unwrap()], &[]));
    assert_eq!(d["result"]["volume"]["exact"], "3/4");
    assert_eq!(d["provenance"]["spec"]["parameter"], "3/4");
    assert_eq!(d["result"]["g_exact"], false);
    let bcc = spec(dir.path(), "bcc.json", BCC);
    let d = doc(&lamiq(&["g", "--spec", bcc.to_str().unwrap()], &[]));
    assert_eq!(d["result"]["second_moment"]["exact"], "19/256");
    assert!(d["result"]["g"]["decimal"].as_str().unwrap().starts_with("0.078543"));
}

#[test]
fn faces_and_vertices_tables() {
    let dir = tempfile::tempdir().unwrap();
    let bcc = spec(dir.path(), "bcc.json", BCC);
    let d = doc(&lamiq(&["faces", "--spec", bcc.to_str().unwrap()], &[]));
    assert_eq!(d["result"]["totals_row"], "24 36 14 1");
    let out = lamiq(&["vertices", "--spec", bcc.to_str().unwrap(), "--format", "csv"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# lamiq "));
    assert!(text.lines().nth(1).unwrap().starts_with("# config: {"));
    assert_eq!(text.lines().nth(2).unwrap(), "class,size,incidence,representative");
}

#[test]
fn out_directory_and_env_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let hex = spec(dir.path(), "hex.json", HEX);
    let out = dir.path().join("out");
    let o = lamiq(
        &["relevant-vectors", "--format", "csv"],
        &[("LAMIQ_SPEC", hex.to_str().unwrap()), ("LAMIQ_A", "2"), ("LAMIQ_OUT", out.to_str().unwrap())],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out.join("relevant-vectors-orbits.csv")).unwrap();
    assert!(text.contains(r#""a":"2""#));
    let rows: Vec<&str> = text.lines().skip(3).collect();
    assert!(!rows.is_empty());
}

#[test]
fn phases_and_optimum_of_the_stacked_line() {
    let dir = tempfile::tempdir().unwrap();
    let hex = spec(dir.path(), "hex.json", HEX);
    let d = doc(&lamiq(&["phases", "--spec", hex.to_str().unwrap(), "--interval", "1/20:3"], &[]));
    let b = d["result"]["boundaries"].as_array().unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0]["simplest_nu"], "1/4");
    let d = doc(&lamiq(&["optimize", "--spec", hex.to_str().unwrap(), "--interval", "1/20:3"], &[]));
    let best = &d["result"]["optimum"];
    assert_eq!(best["phase"], 2);
    assert!(best["g_star"]["decimal"].as_str().unwrap().starts_with("0.0801875"));
    let d = doc(&lamiq(&["fit", "--spec", hex.to_str().unwrap(), "--interval", "1/20:3"], &[]));
    assert_eq!(d["result"]["phases"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let hex = spec(dir.path(), "hex.json", HEX);
    let code = |o: Output| o.status.code().unwrap();
    assert_eq!(code(lamiq(&["frobnicate"], &[])), 2);
    assert_eq!(code(lamiq(&["g", "--group", "ae9", "--a", "1/0"], &[])), 2);
    assert_eq!(code(lamiq(&["g", "--group", "ae9", "--spec", "x"], &[])), 2);
    assert_eq!(code(lamiq(&["g", "--a", "1/2"], &[])), 3);
    assert_eq!(code(lamiq(&["g", "--spec", "/nonexistent.json"], &[])), 3);
    assert_eq!(code(lamiq(&["g", "--spec", hex.to_str().unwrap(), "--a=-1"], &[])), 3);
    let bad = spec(dir.path(), "bad.json", &HEX.replace(r#""-1 2""#, r#""2 1""#));
    assert_eq!(code(lamiq(&["g", "--spec", bad.to_str().unwrap()], &[])), 3);
    assert_eq!(code(lamiq(&["faces", "--spec", hex.to_str().unwrap(), "--orbit-cap", "1"], &[])), 4);
}

#[test]
fn output_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let bcc = spec(dir.path(), "bcc.json", BCC);
    let hex = spec(dir.path(), "hex.json", HEX);
    let runs: Vec<Vec<&str>> = vec![
        vec!["catalog", "--spec", bcc.to_str().unwrap()],
        vec!["mc-check", "--spec", bcc.to_str().unwrap(), "--samples", "40000", "--seed", "3"],
        vec!["fit", "--spec", hex.to_str().unwrap(), "--interval", "1/20:3", "--format", "csv"],
        vec!["vertices", "--group", "ae9", "--a", "4/7"],
    ];
    for args in runs {
        let outs: Vec<Vec<u8>> = ["1", "4", "8", "1"]
            .iter()
            .map(|w| {
                let mut a = args.clone();
                a.extend(["--workers", w]);
                let o = lamiq(&a, &[]);
                assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
                o.stdout
            })
            .collect();
        assert!(outs.iter().all(|o| *o == outs[0]), "{args:?}");
    }
}

#[test]
fn published_examples() {
    let d = doc(&lamiq(&["g", "--group", "ae9", "--a", "1/2"], &[]));
    assert_eq!(d["result"]["g"]["exact"], "1371514291/19110297600");
    let d = doc(&lamiq(&["faces", "--group", "ae9", "--a", "4/7", "--workers", "4"], &[]));
    assert_eq!(d["result"]["totals_row"], "93024 773136 1995904 2479680 1693888 652512 134848 12704 370 1");
}
