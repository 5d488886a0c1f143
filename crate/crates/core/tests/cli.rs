use std::path::Path;
use std::process::{Command, Output};

use antipodal::catalog::manifest;
use antipodal::json::matrix_to_json;
use antipodal::matrix::Matrix;
use antipodal::scalar::{Rational, Scalar, ScalarKind};
use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antipodal")).args(args).env_remove("ANTIPODAL_POOL_CAP").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shipped_manifest_is_current() {
    let shipped: Value = serde_json::from_str(include_str!("../catalog.json")).unwrap();
    assert_eq!(shipped, manifest());
    assert_eq!(json(&run(&["manifest"])), manifest());
}

#[test]
fn list_spaces_filters_and_notes_open_cases() {
    let out = run(&["list-spaces", "--family", "CI"]);
    assert!(out.status.success());
    let ids: Vec<String> = json(&out)["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap().to_string()).collect();
    assert!(ids.contains(&"Sp2_mod_U2".to_string()));
    assert!(ids.iter().all(|i| i.starts_with("Sp") || i.starts_with("PSp")));
    let spin = json(&run(&["list-spaces", "--family", "spin"]));
    assert!(spin["entries"].as_array().unwrap().is_empty());
    assert_eq!(spin["note"], "open case, out of scope");
    assert_eq!(run(&["list-spaces", "--family", "nonsense"]).status.code(), Some(2));
}

#[test]
fn two_number_status_sets_exit_code() {
    let ok = run(&["two-number", "--space", "Sp2_mod_U2"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!((v["two_number"].as_u64(), v["status"].as_str()), (Some(4), Some("PASS")));
    assert_eq!(v["tier"], "certified-maximal");
    let fail = run(&["two-number", "--space", "SU4_mod_Sp2"]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(json(&fail)["status"], "FAIL");
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["two-number", "--space", "SU9_mod_nothing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SU3_mod_SO3"));
    assert_eq!(run(&["two-number"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn found_sets_verify_and_have_weyl_groups() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.json");
    let out = run(&["find-maximal", "--space", "SU3_mod_SO3"]);
    assert!(out.status.success());
    std::fs::write(&set, &out.stdout).unwrap();
    assert_eq!(json(&out)["size"], 4);
    for method in ["pairwise", "phi"] {
        let v = run(&["verify-set", "--space", "SU3_mod_SO3", "--points", path(&set), "--method", method]);
        assert!(v.status.success());
        assert_eq!(json(&v)["antipodal"], true);
    }
    let w = json(&run(&["weyl", "--space", "SU3_mod_SO3", "--set", path(&set)]));
    assert_eq!((w["order"].as_u64(), w["scope"].as_str()), (Some(24), Some("pool-level")));
    let wrong = run(&["verify-set", "--space", "SU3_mod_U1U2", "--points", path(&set)]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn non_antipodal_and_malformed_points() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let a = (&Scalar::int(4, 1) + &Scalar::root_of_unity(4, 4, 1)).scale(Rational::new(1, 2));
    let g = Matrix::from_rows(vec![vec![a.clone(), a.clone()], vec![-&a.conj(), a.conj()]]).unwrap();
    let q = json!({"points": [matrix_to_json(&Matrix::identity(2, ScalarKind::Cyclotomic, 4)), matrix_to_json(&g)]}).to_string();
    std::fs::write(&bad, q).unwrap();
    let out = run(&["verify-set", "--space", "SU2_mod_U1U1", "--points", path(&bad)]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["antipodal"], false);
    std::fs::write(&bad, "{\"points\": [\n  [[1, 0],\n").unwrap();
    let out = run(&["verify-set", "--space", "SU2_mod_U1U1", "--points", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert!(run(&["report", "--space", "Sp2_mod_U2", "--out", path(p)]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let md = dir.path().join("r.md");
    assert!(run(&["report", "--space", "Sp2_mod_U2", "--out", path(&md), "--format", "md"]).status.success());
    assert!(std::fs::read_to_string(&md).unwrap().contains("**Overall: PASS**"));
    let timed = dir.path().join("t.json");
    run(&["report", "--space", "Sp2_mod_U2", "--out", path(&timed), "--timings"]);
    let v: Value = serde_json::from_slice(&std::fs::read(&timed).unwrap()).unwrap();
    assert!(v.get("timings_ms").is_some());
}

#[test]
fn pool_cap_precedence() {
    let capped = Command::new(env!("CARGO_BIN_EXE_antipodal"))
        .args(["two-number", "--space", "SO6_mod_O3O3"])
        .env("ANTIPODAL_POOL_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains('5'));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_antipodal"))
        .args(["two-number", "--space", "SU2_mod_U1U1", "--pool-cap", "1000"])
        .env("ANTIPODAL_POOL_CAP", "1")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
}
