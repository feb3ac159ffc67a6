use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn spherical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherical")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn hl_example() {
    let out = spherical(&["hl", "--lambda", "2,0", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["result"]["polynomial"], "x1^2 + x2^2 + (1-t)*x1*x2");
}

#[test]
fn feq_hermitian_transposition() {
    let out = spherical(&["feq", "--case", "hermitian", "--n", "2", "--sigma", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["cocycle"], "cocycle: pass");
    assert_eq!(doc["result"]["matches_product_formula"], true);
}

#[test]
fn tate_gamma_is_common() {
    let doc = json(&spherical(&["tate"]));
    let gammas = doc["result"]["report"]["gammas"].as_array().unwrap();
    assert_eq!(gammas.len(), 3);
    assert!(gammas.iter().all(|g| g[1] == doc["result"]["gamma"]));
}

#[test]
fn negative_weights_are_accepted() {
    let out = spherical(&["reconstruct", "--case", "alternating", "--lambda", "0,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["holds"], true);
}

#[test]
fn oracle_reports_histogram_and_constant() {
    let out = spherical(&["oracle", "--case", "hermitian", "--lambda", "0,0", "--p", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["comparison"]["fitted_c"], "3/5");
    let sym = json(&spherical(&["oracle", "--case", "symmetric", "--lambda", "0,0", "--p", "3", "--m", "1"]));
    assert_eq!(sym["result"]["histogram"]["counts"][0][1], "48");
}

#[test]
fn spherical_series() {
    let out = spherical(&["spherical", "--case", "hermitian", "--lambda", "1,0", "--order", "1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["result"]["series"]["expansion"].as_str().unwrap().contains("u2"));
    assert_eq!(spherical(&["spherical", "--case", "hermitian", "--lambda", "1,0", "--order", "1"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["hl", "--lambda", "0,2"],
        vec!["hl", "--lambda", "1,x"],
        vec!["hl", "--lambda", "1,0", "--n", "3"],
        vec!["feq", "--case", "hermitian", "--n", "2", "--sigma", "1,1"],
        vec!["feq", "--case", "symmetric", "--n", "2", "--sigma", "2,1"],
        vec!["oracle", "--case", "hermitian", "--lambda", "0", "--p", "4"],
        vec!["hecke", "--case", "alternating", "--lambda", "0"],
        vec!["nonsense"],
        vec!["hl"],
    ] {
        assert_eq!(spherical(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_detects_changed_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["hl", "--lambda", "2,0", "--fixtures", d];
    let rec = spherical(&[&args[..], &["--record"]].concat());
    assert_eq!(rec.status.code(), Some(0));
    assert_eq!(spherical(&[&args[..], &["--verify"]].concat()).status.code(), Some(0));

    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap().replace("x1^2", "x1^3");
    fs::write(&file, text).unwrap();
    let ver = spherical(&[&args[..], &["--verify"]].concat());
    assert_eq!(ver.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&ver.stderr).unwrap();
    assert_eq!(report["fixture_mismatches"][0]["reason"], "content differs");

    let other = spherical(&["hl", "--lambda", "2,1,0", "--fixtures", d, "--verify"]);
    assert_eq!(other.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["feq", "--case", "alternating", "--n", "3", "--sigma", "3,1,2"];
    assert_eq!(spherical(&args).stdout, spherical(&args).stdout);
}

#[test]
fn json_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = spherical(&["tate", "--p", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn thread_count_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_spherical"))
        .env("SPHERICAL_THREADS", "0")
        .args(["tate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_spherical"))
        .env("SPHERICAL_THREADS", "2")
        .args(["hl", "--lambda", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}
