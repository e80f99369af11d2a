//! The command-line binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biratlab")).args(args).env("BIRATLAB_THREADS", "1").output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn classify_lyness_json() {
    let o = run(&["classify", "--input", &data("lyness.txt"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["validity"], "valid");
    assert_eq!(r["branch"]["tag"], "T3a");
    assert_eq!(r["growth"]["kind"], "periodic");
    assert_eq!(r["growth"]["period"], 5);
    assert_eq!(r["growth"]["certainty"], "proved_by_formula");
    let cp: Vec<&str> = r["char_poly"]["coefficients"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(cp, ["-1", "0", "0", "0", "0", "1"]);
    assert_eq!(r["zero_entropy"], true);
    assert!(r["dynamical_degree"]["decimal"].as_str().unwrap().starts_with("1.0000"));
    assert!(r.get("timings").is_none());
}

#[test]
fn classify_is_byte_identical_across_runs() {
    let a = run(&["classify", "--input", &data("t3_linear.txt")]);
    let b = run(&["classify", "--input", &data("t3_linear.txt")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_only_on_request() {
    let o = run(&["classify", "--input", &data("lyness.txt"), "--timings"]);
    assert!(json(&o)["timings"]["total_ms"].is_u64());
}

#[test]
fn classify_text_mode() {
    let o = run(&["classify", "--input", &data("lyness.txt"), "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("branch: T3a"));
    assert!(s.contains("growth: periodic period 5"));
}

#[test]
fn degenerate_parameters_exit_3() {
    let o = run(&["classify", "--input", &data("degenerate.txt")]);
    assert_eq!(o.status.code(), Some(3));
    let r = json(&o);
    assert_eq!(r["validity"], "degenerate");
    assert_eq!(r["witness"], "(αγ)_{12}=0");
}

#[test]
fn non_birational_parameters_exit_2() {
    let o = run(&["classify", "--input", &data("not_birational.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let r = json(&o);
    assert_eq!(r["validity"], "not_birational");
    assert_eq!(r["witness"], "(α1,α2)=(0,0)");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let o = run(&["classify", "--input", &data("arity.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3: gamma needs 3 entries, found 4"));
    let o = run(&["classify", "--input", &data("syntax.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["classify"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["fibration", "--input", &data("lyness.txt"), "--expr", "x", "--mode", "sideways"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn fibration_factor_for_the_t3_family() {
    let o = run(&["fibration", "--input", &data("t3_linear.txt"), "--expr", "(1+2*x)*(2+2*x+y)/x"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["equivariant"], true);
    assert_eq!(r["factor"], "2");
    assert_eq!(r["first_integral"], Value::Null);
}

#[test]
fn fibration_reports_non_equivariance() {
    let o = run(&["fibration", "--input", &data("lyness.txt"), "--expr", "x+y"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["equivariant"], false);
    assert!(r["witness"].is_array());
}

#[test]
fn fibration_expression_errors() {
    let o = run(&["fibration", "--input", &data("lyness.txt"), "--expr", "1/(x-x)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero denominator"));
}

#[test]
fn sample_is_deterministic_and_counts_rejections() {
    let args = ["sample", "--count", "25", "--seed", "11", "--json", "--degree-cap", "256"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = json(&a);
    assert_eq!(s["count"], 25);
    assert_eq!(s["classified"], 25);
    let by_growth: u64 = s["by_growth"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(by_growth, 25);
    assert!(s["rejected"].is_object());
}

#[test]
fn version_prints() {
    let o = run(&["version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("biratlab "));
}
