use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_meshlab"));
    cmd.args(args.iter().map(|a| {
        if a.ends_with(".json") {
            fixture(a)
        } else {
            a.to_string()
        }
    }));
    match seed {
        Some(s) => cmd.env("MESHLAB_SEED", s),
        None => cmd.env_remove("MESHLAB_SEED"),
    };
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const A3: [&str; 2] = ["a3.algebra.json", "a3.component.json"];
const EX3: [&str; 2] = ["ex3.algebra.json", "ex3.component.json"];

fn with<'a>(cmd: &'a str, inputs: [&'a str; 2], rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd, inputs[0], inputs[1]];
    v.extend_from_slice(rest);
    v
}

#[test]
fn validate_emits_a_certificate() {
    let out = run(&with("validate", A3, &[]), None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn seed_comes_from_the_environment() {
    let v = json(&run(&with("validate", A3, &[]), Some("42")));
    assert_eq!(v["seed"], 42);
    let v = json(&run(&with("validate", A3, &["--seed", "7"]), Some("42")));
    assert_eq!(v["seed"], 7);
}

#[test]
fn reports_are_reproducible() {
    let a = run(&with("report", EX3, &[]), Some("3"));
    let b = run(&with("report", EX3, &[]), Some("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["standardness"]["verdict"], "standard");
    assert_eq!(v["search"]["outcome"], "found");
    assert!(v["theorem_b"].as_array().unwrap().iter().all(|r| r["holds"] == true));
}

#[test]
fn field_override_and_unsupported_fields() {
    let out = run(&with("validate", A3, &["--field", "GF(3)"]), None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["field"]["p"], 3);
    let out = run(&with("validate", A3, &["--field", "17"]), None);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "invalid_field");
}

#[test]
fn missing_input_is_invalid() {
    let out = run(&["validate", "nowhere.json", "a3.component.json"], None);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
}

#[test]
fn conflicting_morphism_flags_are_rejected() {
    let out = run(
        &with("decompose", A3, &["--path", "p,j", "--morphism", "ex3.fprime.json"]),
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn find_writes_a_functor_without_touching_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("F.json");
    let before: Vec<Vec<u8>> = EX3.iter().map(|f| std::fs::read(fixture(f)).unwrap()).collect();
    let out = run(&with("find-F", EX3, &["-o", target.to_str().unwrap()]), None);
    assert_eq!(out.status.code(), Some(0));
    let after: Vec<Vec<u8>> = EX3.iter().map(|f| std::fs::read(fixture(f)).unwrap()).collect();
    assert_eq!(before, after);
    let out = run(&with("verify-F", EX3, &[target.to_str().unwrap()]), None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let out = run(&with("find-F", EX3, &["--budget", "1"]), None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["outcome"], "unknown");
}

#[test]
fn mesh_category_slices() {
    let out = run(&with("mesh-cat", A3, &["--degree-cap", "4"]), None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let p2_i2: Vec<&Value> = v["slices"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["source"] == "P2" && s["target"] == "I2")
        .collect();
    assert_eq!(p2_i2.len(), 1);
    assert_eq!(p2_i2[0]["degree"], 2);
    assert_eq!(p2_i2[0]["dim"], 1);
}

#[test]
fn composition_of_paths() {
    let out = run(&with("compose", A3, &["--path", "p", "--path", "j"]), None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["in_rad_n_plus_1"], false);
    assert_eq!(v["composite_depth"], 2);
}

#[test]
fn degrees_and_kernel_paths() {
    let out = run(&with("degrees", A3, &["--functor", "a3.functor.json"]), None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let p = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["arrow"] == "p")
        .unwrap();
    assert_eq!(p["left_degree"], 1);
    assert_eq!(p["left_witness"]["vertex"], "P1");
    let u = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["arrow"] == "u")
        .unwrap();
    assert_eq!(u["left_degree"], "inf");
    let k = v["kernel_paths"].as_array().unwrap();
    assert!(k.iter().all(|w| w["composite_nonzero"] == true && w["killed"] == true));
    assert!(k
        .iter()
        .any(|w| w["arrow"] == "p" && w["path"] == serde_json::json!(["u"])));
}

#[test]
fn bounds_hold_and_pretty_tables_render() {
    let out = run(&with("bounds", A3, &[]), None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["consistent"], true);
    let out = run(&with("bounds", A3, &["--pretty"]), None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.contains("P2 -> I2") && l.contains("m  3")));
}

#[test]
fn a_bad_functor_stops_dependent_commands() {
    let out = run(
        &with(
            "decompose",
            A3,
            &["--functor", "negative/a3.flipped-sign.functor.json", "--path", "p,j"],
        ),
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
}
