use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn heyde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heyde"))
        .args(args)
        .env_remove("HEYDE_MAX_GROUP_ORDER")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_equal_laws_under_negation() {
    let dir = tempfile::tempdir().unwrap();
    let mu = write(dir.path(), "mu.json", r#"{"0": "1/2", "1": "1/3", "3": "1/6"}"#);
    let out = heyde(&["--group", "Z5", "--alpha", "4", "--mu1", &mu, "--mu2", &mu]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["symmetric_direct"], true);
    assert_eq!(r["symmetric_fourier"], true);
    assert_eq!(r["decomposition"]["kernel"].as_array().unwrap().len(), 5);
}

#[test]
fn check_unequal_laws_under_identity() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"0": "1/2", "1": "1/2"}"#);
    let b = write(dir.path(), "b.json", r#"{"2": "1"}"#);
    let out = heyde(&["--group", "Z3", "--alpha", "1", "--mu1", &a, "--mu2", &b]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["symmetric_direct"], false);
    assert_eq!(r["agree"], true);
    assert_eq!(r["decomposition"], Value::Null);
}

#[test]
fn malformed_group_names_token() {
    let dir = tempfile::tempdir().unwrap();
    let mu = write(dir.path(), "mu.json", r#"{"0": "1"}"#);
    let out = heyde(&["--group", "Z0", "--alpha", "1", "--mu1", &mu, "--mu2", &mu]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Z0"));
}

#[test]
fn exhaustive_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let out = heyde(&[
        "--mode",
        "exhaustive",
        "--group",
        "Z3",
        "--grid-denominator",
        "6",
        "--out",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["automorphisms"], 2);
    assert_eq!(r["instances"], 2 * 28 * 28);
    assert_eq!(r["mismatches"], 0);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("alpha,mu1,mu2,direct,fourier"));
    assert_eq!(rows.lines().count() as u64 - 1, r["symmetric"].as_u64().unwrap());
}

#[test]
fn exhaustive_invertible_i_plus_alpha() {
    let out = heyde(&["--mode", "exhaustive", "--group", "Z5", "--alpha", "2", "--grid-denominator", "4"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["h_whole_nondegenerate"], 0);
    assert_eq!(r["mismatches"], 0);
}

#[test]
fn even_group_requires_flag() {
    let args = ["--mode", "exhaustive", "--group", "Z2", "--grid-denominator", "3"];
    assert_eq!(heyde(&args).status.code(), Some(2));
    let mut with = args.to_vec();
    with.push("--allow-even");
    let out = heyde(&with);
    assert!(out.status.success());
    assert_eq!(report(&out)["outside_hypotheses"], true);
}

#[test]
fn counterexample_defaults_and_rejections() {
    let out = heyde(&["--mode", "counterexample"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["confirmed"], true);
    assert_eq!(r["decomposition"]["kind"], "irreducible");
    assert_eq!(r["certificate"]["entries"].as_array().unwrap().len(), 4);

    let out = heyde(&["--mode", "counterexample", "--a", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = heyde(&["--mode", "counterexample", "--kappa", "4/5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("|κ1| ≤ √(σ'1/σ1)"));
}

#[test]
fn fuzz_is_byte_identical_for_a_seed() {
    let args = ["--mode", "fuzz", "--group", "Z15", "--count", "100", "--seed", "9", "--grid-denominator", "4"];
    let (a, b) = (heyde(&args), heyde(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["converse_failures"], 0);
}

#[test]
fn enumeration_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_heyde"))
        .args(["--mode", "exhaustive", "--group", "Z15", "--grid-denominator", "1"])
        .env("HEYDE_MAX_GROUP_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
}

#[test]
fn transcript_mode() {
    let dir = tempfile::tempdir().unwrap();
    let mu = write(dir.path(), "mu.json", r#"{"0": "2/3", "1": "1/6", "4": "1/6"}"#);
    let out = heyde(&["--mode", "transcript", "--group", "Z5", "--alpha", "4", "--mu1", &mu, "--mu2", &mu]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["concluded"], true);
    assert_eq!(r["steps"].as_array().unwrap().len(), 5);
}
