mod common;

use std::process::Command;

use common::{fixture, fixture_path};
use jkpencil::cli::run;
use serde_json::Value;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn jk(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("jkpencil").chain(args.iter().copied()), &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn path(name: &str) -> String {
    fixture_path(name)
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.out).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", o.out))
}

#[test]
fn invariants_of_the_example() {
    let o = jk(&["invariants", &path("example.json")]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v = json(&o);
    assert_eq!(v["kronecker"], serde_json::json!([3]));
    assert_eq!(v["charpoly"], "1");
    assert_eq!(v["rank"], 4);
}

#[test]
fn core_and_complete() {
    let o = jk(&["core", &path("example.json")]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["basis"].as_array().unwrap().len(), 3);
    let o = jk(&["complete", &path("j24_k3.json")]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out, fixture("j24_k3_trace.json"));
}

#[test]
fn obstruction_verdicts() {
    let o = jk(&["obstruct", &path("example.json"), &path("e4.json"), "--samples", "1,2,3"]);
    assert_eq!(o.code, 4);
    assert_eq!(json(&o)["verdict"], "FAIL");
    assert!(o.err.contains("check failed"));
    let o = jk(&["obstruct", &path("example.json"), &path("e1.json")]);
    assert_eq!(o.code, 0, "{}", o.out);
    assert_eq!(json(&o)["verdict"], "PASS");
}

#[test]
fn parse_errors_exit_with_two() {
    assert_eq!(jk(&["invariants", &path("truncated.json")]).code, 2);
    assert_eq!(jk(&["invariants", "/nonexistent/pencil.json"]).code, 2);
    assert_eq!(jk(&["no-such-command"]).code, 2);
    assert_eq!(jk(&["gen", "--blocks", "Q:1"]).code, 2);
    assert_eq!(jk(&["obstruct", &path("example.json"), &path("e4.json"), "--samples", "x"]).code, 2);
}

#[test]
fn structural_errors_exit_with_three() {
    assert_eq!(jk(&["invariants", &path("not_skew.json")]).code, 3);
    assert_eq!(jk(&["admissible", &path("example.json"), &path("wrong_ambient.json")]).code, 3);
}

#[test]
fn precondition_errors_exit_with_four() {
    let o = jk(&["reduce", &path("example.json"), &path("e1_e2.json")]);
    assert_eq!(o.code, 4);
    assert!(o.err.contains("not admissible"), "{}", o.err);
    let o = jk(&["reduce", &path("example.json"), &path("e1_e3.json")]);
    assert_eq!(o.code, 4);
    assert!(o.err.contains("not bi-isotropic"), "{}", o.err);
}

#[test]
fn generation_is_deterministic() {
    let a = jk(&["gen", "--blocks", "J:1:2,K:2,J:inf:1", "--congruence-seed", "9"]);
    let b = jk(&["gen", "--blocks", "J:1:2,K:2,J:inf:1", "--congruence-seed", "9"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let c = jk(&["gen", "--blocks", "J:1:2,K:2,J:inf:1", "--congruence-seed", "10"]);
    assert_ne!(a.out, c.out);
    let v = json(&a);
    assert_eq!(v["n"], 9);
    assert_eq!(v["invariants"]["kronecker"], serde_json::json!([2]));
}

#[test]
fn gen_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    let o = jk(&["gen", "--blocks", "J:-1:1,K:3", "-o", file.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    let o = jk(&["invariants", file.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["charpoly"], "(l-1)");
}

#[test]
fn poisson_commands() {
    let (so3, frozen) = (path("so3.json"), path("frozen_e3.json"));
    let o = jk(&["poisson", "compat", &so3, &frozen]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["compatible"], true);

    let o = jk(&["poisson", "check", &path("broken_cubic.json")]);
    assert_eq!(o.code, 4);
    assert_eq!(json(&o)["jacobi"]["1,2,3"], "1");

    let o = jk(&["poisson", "casimir", &so3, &frozen, "--f", "x1^2+x2^2+x3^2", "--lambda", "0"]);
    assert_eq!(o.code, 0, "{}", o.out);
    let o = jk(&["poisson", "casimir", &so3, &frozen, "--f", "x1", "--lambda", "0"]);
    assert_eq!(o.code, 4);

    let o = jk(&["poisson", "standard-report", &so3, &frozen, &path("so3_family.json"), "--complete"]);
    assert_eq!(o.code, 0, "{}", o.out);
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
}

#[test]
fn guardrails_reject_high_degree() {
    let o = jk(&["poisson", "check", &path("broken_cubic.json"), "--max-degree", "2"]);
    assert_eq!(o.code, 4, "{}", o.err);
}

#[test]
fn text_format() {
    let o = jk(&["--format", "text", "invariants", &path("example.json")]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("kronecker"));
    assert!(serde_json::from_str::<Value>(&o.out).is_err());
}

#[test]
fn binary_matches_library_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_jkpencil"))
        .args(["obstruct", &path("example.json"), &path("e4.json"), "--samples", "1,2,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let lib = jk(&["obstruct", &path("example.json"), &path("e4.json"), "--samples", "1,2,3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.out);
    let help = Command::new(env!("CARGO_BIN_EXE_jkpencil")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
