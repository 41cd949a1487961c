//! End-to-end tests of the binary: exit codes per the documented contract
//! and byte-stable structured output against golden files.

use std::process::{Command, Output};

const EXAMPLE_RING: &str =
    "ring F101[x1..x5]/(x1^2-x2*x3, x2^2-x3*x5, x3^2-x1*x4, x4^2, x5^2, x3*x4, x2*x5, x4*x5)";
const EXAMPLE_IDEAL: &str = "ideal (x1+x2+x4, x2+x3+x5)";

fn qci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qci"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn hilbert_json_matches_golden_bytes() {
    let out = qci(&[
        "hilbert",
        "--ring",
        EXAMPLE_RING,
        "--ideal",
        EXAMPLE_IDEAL,
        "--json",
    ]);
    assert!(out.status.success());
    let got = String::from_utf8(out.stdout).unwrap();
    let want = include_str!("golden/hilbert_example.json");
    assert_eq!(got, want, "structured output must be byte-stable");
}

#[test]
fn quadrics_json_matches_golden_bytes() {
    let out = qci(&[
        "quadrics", "--n", "2", "--prime", "101", "--trials", "3", "--seed", "1", "--json",
    ]);
    assert!(out.status.success());
    let got = String::from_utf8(out.stdout).unwrap();
    let want = include_str!("golden/quadrics_n2.json");
    assert_eq!(got, want, "experiment output must be byte-stable");
}

#[test]
fn repeated_runs_are_identical() {
    let a = qci(&["gb", "--ring", EXAMPLE_RING, "--json"]);
    let b = qci(&["gb", "--ring", EXAMPLE_RING, "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_zero_on_certificate() {
    let out = qci(&["qci", "--ring", EXAMPLE_RING, "--ideal", EXAMPLE_IDEAL]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_one_on_asserted_refutation() {
    // (x4) is not a q.c.i. ideal; --assert turns the refutation into exit 1
    let refuted = qci(&[
        "qci",
        "--ring",
        EXAMPLE_RING,
        "--ideal",
        "ideal (x4)",
        "--assert",
    ]);
    assert_eq!(refuted.status.code(), Some(1));
    // without --assert the refutation is an ordinary report
    let plain = qci(&["qci", "--ring", EXAMPLE_RING, "--ideal", "ideal (x4)"]);
    assert_eq!(plain.status.code(), Some(0));
    let text = String::from_utf8(plain.stdout).unwrap();
    assert!(text.contains("not a q.c.i. ideal"));
}

#[test]
fn exit_two_on_input_errors() {
    let bad_field = qci(&["hilbert", "--ring", "ring F4[x1]/(x1^2)"]);
    assert_eq!(bad_field.status.code(), Some(2));
    let char_two = qci(&["hilbert", "--ring", "ring F2[x1]/(x1^2)"]);
    assert_eq!(char_two.status.code(), Some(2));
    let err = String::from_utf8(char_two.stderr).unwrap();
    assert!(err.contains("characteristic 2"));
    let syntax = qci(&["hilbert", "--ring", "ring F101[x1..x5](x1)"]);
    assert_eq!(syntax.status.code(), Some(2));
    let unknown_var = qci(&["hilbert", "--ring", "ring F101[x1..x2]/(x1*y7)"]);
    assert_eq!(unknown_var.status.code(), Some(2));
    // enumerative search over the rationals is an unsupported mode
    let rational_enum = qci(&[
        "ezd",
        "--ring",
        "ring QQ[x1..x2]/(x1^2, x2^2)",
        "--mode",
        "enumerate",
    ]);
    assert_eq!(rational_enum.status.code(), Some(2));
}

#[test]
fn reports_embed_rerun_parameters() {
    let out = qci(&[
        "quadrics", "--n", "2", "--prime", "13", "--trials", "2", "--seed", "42", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 42);
    assert_eq!(v["config"]["prime"], 13);
    assert_eq!(v["config"]["trials"], 2);
    assert!(v["config"]["rng"].as_str().unwrap().contains("chacha8"));
    let ring_report = qci(&["gb", "--ring", EXAMPLE_RING, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&ring_report.stdout).unwrap();
    assert_eq!(v["order"], "grevlex");
    assert_eq!(v["field"], "F101");
    assert!(v["ring"].as_str().unwrap().starts_with("ring F101"));
}

#[test]
fn lex_order_is_accepted() {
    let out = qci(&[
        "gb",
        "--ring",
        "ring QQ[x1..x2]/(x1^2 - x2^2, x1*x2)",
        "--order",
        "lex",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Groebner basis"));
}
