use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => data(name).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_trimspan")).args(&args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_reports_metric_and_trim() {
    let o = run(&["validate", "@caterpillar.csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("metric, not trim, trim function: a=1"));
    let o = run(&["validate", "@circle4.csv"]);
    assert!(stdout(&o).starts_with("metric, trim"));
    let o = run(&["validate", "@triangle_violation.csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d(a,b) + d(b,c) < d(a,c)"));
    let v = json(&run(&["validate", "@pseudo.csv", "--format", "json"]));
    assert_eq!(v["kind"], "pseudometric");
}

#[test]
fn sequence_lengths() {
    assert_eq!(json(&run(&["sequence", "@caterpillar.csv"]))["N"], 2);
    assert_eq!(json(&run(&["sequence", "@circle4.csv"]))["N"], 0);
    let v = json(&run(&["sequence", "@two_point.csv"]));
    assert_eq!(v["N"], 1);
    assert_eq!(v["sigma"][0], "2");
    let v = json(&run(&["sequence", "@pseudo.csv", "--pseudometric"]));
    assert_eq!(v["levels"][0]["labels"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["sequence", "@pseudo.csv"]).status.code(), Some(1));
}

#[test]
fn cylinder_roots() {
    let v = json(&run(&["cylinder", "@caterpillar.csv"]));
    assert_eq!(v["cylinder"]["components"].as_array().unwrap().len(), 1);
    let roots = v["quotient"]["nodes"].as_array().unwrap().iter().filter(|n| n["root"] == true).count();
    assert_eq!(roots, 1);
    let v = json(&run(&["cylinder", "@circle4.csv"]));
    let roots = v["quotient"]["nodes"].as_array().unwrap().iter().filter(|n| n["root"] == true).count();
    assert_eq!(roots, 4);
    let v = json(&run(&["cylinder", "@singleton.csv"]));
    assert_eq!(v["cylinder"]["vertices"].as_array().unwrap().len(), 1);
    let dot = stdout(&run(&["cylinder", "@caterpillar.csv", "--dot"]));
    assert!(dot.starts_with("graph cylinder {"));
    assert!(dot.contains("[label=\"5/2\"]"));
    assert!(dot.contains("graph quotient_cylinder {"));
}

#[test]
fn tightspan_actions() {
    let v = json(&run(&["tightspan", "@two_point.csv", "--check", "@f_two_point.json"]));
    assert_eq!(v["member"], true);
    let v = json(&run(&["tightspan", "@two_point.csv", "--check", "@f_two_point_short.json"]));
    assert_eq!(v["member"], false);
    assert_eq!(v["certificate"]["kind"], "star-violated");

    let v = json(&run(&["tightspan", "@equilateral2.csv", "--decompose", "@f_equilateral.json"]));
    assert_eq!(v["class"], "branch");
    assert_eq!(v["point"], "x1@0+1/2");
    let v = json(&run(&["tightspan", "@caterpillar.csv", "--decompose", "@f_caterpillar_sigma.json"]));
    assert_eq!(v["class"], "root");
    assert_eq!(run(&["tightspan", "@caterpillar.csv", "--decompose", "@f_caterpillar_bad.json"]).status.code(), Some(1));

    let v = json(&run(&["tightspan", "@equilateral2.csv", "--project", "@f_equilateral_high.json"]));
    assert_eq!(v["projected"]["x1"], "0");
    assert_eq!(run(&["tightspan", "@two_point.csv"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    for file in ["@caterpillar.csv", "@circle4.csv", "@singleton.csv"] {
        let v = json(&run(&["verify", file, "--samples", "100", "--seed", "5"]));
        assert_eq!(v["samples"], 100);
        assert!(v["violations"].as_array().unwrap().is_empty());
    }
    let a = stdout(&run(&["verify", "@caterpillar.csv", "--samples", "20", "--seed", "9"]));
    let b = stdout(&run(&["verify", "@caterpillar.csv", "--samples", "20", "--seed", "9"]));
    assert_eq!(a, b);
    assert_eq!(run(&["verify", "@caterpillar.csv", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_sequence() {
    let o = run(&["gen", "--newick", "@star.nwk"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a,b,c\n0,3,4\n3,0,5\n4,5,0\n");
    assert_eq!(run(&["gen", "--newick", "@bad.nwk"]).status.code(), Some(2));

    let o = run(&["gen", "--chain", "@caterpillar_chain.json", "--oracle"]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 7);
    assert!(csv.contains("# oracle agreement: 0 violations"));

    let dir = std::env::temp_dir().join(format!("trimspan-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("chain.csv");
    std::fs::write(&file, csv).unwrap();
    let v = json(&run(&["sequence", file.to_str().unwrap()]));
    assert_eq!(v["N"], 2);
    assert_eq!(v["levels"][0]["underline"], serde_json::json!(["1", "1", "1", "1", "1", "1"]));
    assert_eq!(v["levels"][1]["dist"][0][1], "5");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["sequence", "@malformed.csv"]).status.code(), Some(2));
    assert_eq!(run(&["sequence", "@missing.csv"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "@caterpillar.csv", "--format", "dot"]).status.code(), Some(2));
}
