use std::process::{Command, Output};

use serde_json::Value;

fn uhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uhecke")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = uhecke(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lfactor_at_half() {
    let v = json(&["lfactor", "--r", "1", "--eps", "-", "--sigma", "1/2"]);
    assert_eq!(v["result"], "1/(1 - q^-1 X^2)");
    assert_eq!(v["r"], 1);
    assert_eq!(v["eps"], "-");
    assert_eq!(v["c"], 0);
    assert_eq!(v["sigma"], serde_json::json!(["q"]));
}

#[test]
fn epsilon_minus() {
    let v = json(&["epsilon", "--r", "3", "--eps", "-", "--c", "0", "--sigma", "1/2,0,1"]);
    assert_eq!(v["result"], "-q X^2");
    let v = json(&["epsilon", "--r", "1", "--eps", "+", "--c", "-1"]);
    // q^{2cr(2s−1)} at c = −1, r = 1
    assert_eq!(v["result"], "q^2 X^4");
}

#[test]
fn zeta_gk_and_intertwine() {
    let v = json(&["zeta", "--r", "1", "--eps", "-", "--sigma", "1/2"]);
    assert_eq!(v["result"], "(-q^-2 - q^-3 X^2)/(1 - q^-2 X^2)");
    let v = json(&["gk", "--r", "1", "--eps", "+"]);
    assert_eq!(v["result"], "(1 - q^-2 X^2)/(1 - q^-1 X^2)");
    let v = json(&["intertwine", "--r", "2", "--eps", "-", "--c", "2"]);
    assert_eq!(v["functional_equation"]["pass"], true);
}

#[test]
fn hecke_commands() {
    let v = json(&["eigenvector", "--r", "1", "--eps", "-"]);
    assert_eq!(v["terms"][1]["coeff"], "-q^-1");
    let v = json(&["idempotent", "--r", "1", "--eps", "+"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let v = json(&["hecke-mul", "--u", "[-1]", "--v", "[-1]"]);
    assert_eq!(v["result"], "(q)·T[[1]] + (-1 + q)·T[[-1]]");
}

#[test]
fn theta_and_classify() {
    let v = json(&["theta-params", "--r", "1", "--d", "1", "--eps", "-"]);
    assert_eq!(v["left"], serde_json::json!(["q"]));
    assert_eq!(v["right"], serde_json::json!([]));
    let v = json(&["classify", "--eps", "-", "--sigma", "1"]);
    assert_eq!(v["result"], "neither");
    let v = json(&["classify", "--eps", "-", "--sigma", "-1/2"]);
    assert_eq!(v["result"], "almost_unramified");
}

#[test]
fn ideal_member_diagonal_and_single() {
    let base = ["ideal-member", "--r", "1", "--d", "1", "--eps", "+"];
    let mut diag = base.to_vec();
    diag.extend(["--left", "T1 + T1^-1", "--right", "1", "--left", "-1", "--right", "T1 + T1^-1"]);
    assert_eq!(json(&diag)["member"], true);
    let mut single = base.to_vec();
    single.extend(["--left", "T1 + T1^-1", "--right", "1"]);
    let v = json(&single);
    assert_eq!(v["member"], false);
    assert_eq!(v["image"], "T1^-1 + T1");
}

#[test]
fn verify_zeta_suite_flags_the_display() {
    let v = json(&["verify", "--suite", "zeta-identities", "--rmax", "3"]);
    assert_eq!(v["summary"]["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    let flag = checks.iter().find(|c| c["id"] == "zeta.rank_one.printed_display_flag").unwrap();
    assert!(flag["notes"].as_str().unwrap().contains("(1 - q^-1 X^2)"));
}

#[test]
fn weil_commands() {
    let v = json(&["weil-verify", "--p", "3"]);
    assert_eq!(v["check"], "generator_lemma");
    assert_eq!(v["pass"], true);
    let v = json(&["verify", "--suite", "weil-finite", "--p", "3"]);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn output_is_deterministic_and_mirrored_to_file() {
    let path = std::env::temp_dir().join(format!("uhecke-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let args = ["verify", "--suite", "satake-core", "--rmax", "2", "--json-out", p];
    let a = uhecke(&args);
    let b = uhecke(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["lfactor", "--r", "1", "--eps", "x"],
        vec!["lfactor", "--r", "2", "--eps", "-", "--sigma", "1/2"],
        vec!["lfactor", "--r", "1", "--eps", "-", "--sigma", "1/3"],
        vec!["epsilon", "--r", "1", "--eps", "-", "--sigma", "1"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--suite", "weil-finite", "--p", "7"],
        vec!["weil-verify", "--check", "other"],
        vec!["ideal-member", "--r", "1", "--d", "1", "--eps", "+", "--left", "T1", "--right", "1"],
        vec!["eigenvector", "--r", "9", "--eps", "+"],
    ] {
        let out = uhecke(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn rank_bound_follows_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_uhecke"))
        .args(["verify", "--suite", "zeta-identities", "--rmax", "4"])
        .env("UHECKE_MAX_R", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
