use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorcat")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

#[test]
fn plucker_one_quadric() {
    let out = run(&["--json", "plucker", "--n", "4", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["payload"]["quadrics"].as_array().unwrap().len(), 1);
    assert!(out.stderr.is_empty());
}

#[test]
fn human_summary_goes_to_stderr() {
    let out = run(&["segre", "--dims", "2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    report(&out);
    assert!(String::from_utf8_lossy(&out.stderr).contains("status: pass"));
}

#[test]
fn malformed_ring_exits_2() {
    let out = run(&["--json", "derham", "--algebra", "QQ[x]/(x^2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert_eq!(r["payload"]["error"], "parse");
}

#[test]
fn unknown_subcommand_prints_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn unknown_suite_exits_2() {
    let out = run(&["--json", "check", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["witnesses"][0].as_str().unwrap().contains("derham"));
}

#[test]
fn fail_carries_witness() {
    let out = run(&["--json", "cramer", "--matrix", "1,2;2,4"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert!(!r["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn cramer_inverse_over_q() {
    let r = report(&run(&["--json", "cramer", "--matrix", "2,1;1,1"]));
    assert_eq!(r["payload"]["inverse"], serde_json::json!([["1", "-1"], ["-1", "2"]]));
}

#[test]
fn check_is_reproducible() {
    let a = run(&["--json", "check", "--suite", "sympow", "--seed", "42"]);
    let b = run(&["--json", "check", "--suite", "sympow", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["payload"]["seed"], 42);
}

#[test]
fn monadkit_suite_passes() {
    let out = run(&["--json", "check", "--suite", "monadkit", "--max-size", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn subcommands_pass() {
    for args in [
        vec!["derham", "--algebra", "QQ[x,y]/(x^2,y^2)", "--pmax", "3"],
        vec!["koszul", "--s", "1,2,0", "--e", "1,0,0"],
        vec!["veronese", "--n", "2", "--d", "2"],
        vec!["rees"],
        vec!["bracket-cert"],
        vec!["extpow", "--ring", "ZZ", "--rank", "1", "--n", "4"],
        vec!["sympow", "--ring", "QQ", "--rank", "2", "--n", "3"],
        vec!["locally-free", "--rank", "2", "--d", "2"],
        vec!["monad-tensor", "--theory", "supl", "--a", "2", "--b", "2"],
        vec!["monad-laws", "--theory", "pointed"],
        vec!["quantale", "spec-z", "--max-prime", "30"],
        vec!["quantale", "localize-half", "--window", "3:1,4:1"],
        vec!["reflect", "torsion", "--group", "12", "--a", "2", "--targets-up-to", "12"],
        vec!["reflect", "tf-tensor", "--m", "0,2", "--n", "0"],
        vec!["reflect", "section", "--summands", "free,t^2@1,free@3"],
        vec!["freesym", "compose", "--f", "1,0|e,u", "--g", "0,1|id_B,e"],
        vec!["freesym", "extend", "--morphism", "1,0|e,u"],
    ] {
        let mut full = vec!["--json"];
        full.extend(&args);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn asym_over_z_is_z2() {
    let r = report(&run(&["--json", "sympow", "--ring", "ZZ", "--rank", "1", "--n", "4", "--kind", "asym"]));
    let t = r["payload"]["table"].as_array().unwrap();
    for row in &t[2..] {
        assert_eq!(row["structure"]["invariant_factors"], serde_json::json!(["2"]));
    }
}
