//! The `polysurj` binary: subcommands, exit codes and the bundled corpus.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn polysurj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysurj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn analyze_prints_summary_and_json() {
    let o = polysurj(&["analyze", "x^2*y^3 + 1", "--box", "10", "--naturals", "20", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("classification: TorusMonomial"), "{text}");
    assert!(text.ends_with("verdict: RepresentsNegatives\n"), "{text}");

    let o = polysurj(&["analyze", "-x^2 - y^2 - 1", "--box", "5", "--naturals", "5", "--depth", "2", "--json", "-"]);
    let v = json(&o);
    assert_eq!(v["verdict"], "RepresentsNegatives");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    assert_eq!(v["config"]["box_radius"], "5");
}

#[test]
fn analyze_reads_config_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "box_radius = 20\nnaturals = 100\nexhaustive_box = true\n").unwrap();
    let out = dir.path().join("r.json");
    let o = polysurj(&[
        "analyze",
        "x^2 + y^2",
        "--config",
        cfg.to_str().unwrap(),
        "--naturals",
        "10",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "MissesNaturalUpTo(10)");
    assert_eq!(v["scan"]["missing"], serde_json::json!(["3", "6", "7"]));
    assert_eq!(v["config"]["box_radius"], "20");
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["analyze", "x^"],
        vec!["analyze", "7"],
        vec!["analyze", "x", "--box", "0"],
        vec!["witness", "x", "--target", "1,2,0"],
        vec!["genus", "t^3", "--exponent", "3"],
        vec!["conic", "T", "-T", "--samples", "9..1"],
        vec!["normalize", "t^2", "t^3"],
        vec!["corpus", "/nonexistent/corpus.json"],
    ] {
        let o = polysurj(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn witness_and_budget_exhaustion() {
    let v = json(&polysurj(&["witness", "x^2*(x*y + 1)^3 + 1", "--target", "3,-3,5"]));
    assert_eq!(v["classification"]["kind"], "TwistedMonomial");
    let (x, y): (i64, i64) = (
        v["witness"]["x"].as_str().unwrap().parse().unwrap(),
        v["witness"]["y"].as_str().unwrap().parse().unwrap(),
    );
    assert_eq!(((x - 3) % 5, (y + 3) % 5), (0, 0));
    let value = (x * x) as i128 * ((x * y + 1) as i128).pow(3) + 1;
    assert!(value < 0);
    assert_eq!(v["witness"]["value"], value.to_string());

    let o = polysurj(&["witness", "x^2 + y^2 + 1", "--target", "0,0,1", "--budget", "500"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn genus_conic_normalize() {
    let v = json(&polysurj(&["genus", "t*(t-1)", "--exponent", "5"]));
    assert_eq!(v["genus"], "2");
    let v = json(&polysurj(&["conic", "-1", "-1", "--samples", "1..5"]));
    assert_eq!(v["failures"].as_array().unwrap().len(), 5);
    assert_eq!(v["failures"][0]["places"], serde_json::json!(["2", "inf"]));
    let v = json(&polysurj(&["normalize", "t", "t^3 + 2*t"]));
    assert_eq!(v["cov"].as_array().unwrap().len(), 2);
    assert_eq!(v["curve"], serde_json::json!(["t", "0"]));
}

#[test]
fn bundled_corpus_matches_golden_reports() {
    let o = polysurj(&["corpus", corpus_dir().join("golden.json").to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.ends_with("0 failing\n"), "{text}");
}

#[test]
fn corpus_mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    std::fs::write(
        &file,
        r#"{"entries": [{"name": "sq", "polynomial": "x^2 + y^2", "expected": "RepresentsNegatives",
            "config": {"box_radius": 5, "naturals": 5}}]}"#,
    )
    .unwrap();
    let o = polysurj(&["corpus", file.to_str().unwrap(), "--out", dir.path().join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL sq"));
    assert!(dir.path().join("out").join("sq.json").exists());
}
