use std::process::{Command, Output};

use lspac::exact::{parse_rational, Rational};
use serde_json::Value;

fn lspac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lspac")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lspac(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn rational(v: &Value) -> Rational {
    parse_rational(v.as_str().expect("rational string")).expect("parses")
}

/// Every string that looks like a rational must parse back.
fn all_rationals_parse(v: &Value) {
    match v {
        Value::String(s) if s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-') && !s.is_empty() => {
            parse_rational(s).unwrap_or_else(|_| panic!("{s} does not parse"));
        }
        Value::Array(items) => items.iter().for_each(all_rationals_parse),
        Value::Object(map) => map.values().for_each(all_rationals_parse),
        _ => {}
    }
}

#[test]
fn liminf_of_two_five() {
    let v = json(&["liminf", "--moduli", "per:2,5", "--format", "json"]);
    assert_eq!(v["liminf"], "1/9");
    assert_eq!(v["moduli"], "per:2,5");
}

#[test]
fn lspac_matches_liminf() {
    for moduli in ["per:2", "per:2,5", "pre:6 per:2,3", "per:3,2,2", "pre:2,9 per:4"] {
        let liminf = rational(&json(&["liminf", "--moduli", moduli])["liminf"]);
        let value = rational(&json(&["lspac", "--moduli", moduli])["lspac"]);
        assert_eq!(value, Rational::from_integer(2.into()) / (Rational::from_integer(1.into()) + liminf), "{moduli}");
    }
}

#[test]
fn measure_zero_report() {
    let v = json(&["measure-zero"]);
    assert_eq!(v["count"], 55);
    assert_eq!(v["sum"], "19759/20736");
    assert_eq!(v["verified"], true);
    all_rationals_parse(&v);
}

#[test]
fn gaps_verify() {
    let v = json(&["gaps", "--n-max", "5"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["name"], "gaps");
    all_rationals_parse(&v);
}

#[test]
fn bad_moduli_exit_two() {
    let out = lspac(&["liminf", "--moduli", "per:1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lspac(&["liminf", "--moduli", "pre:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exit_two() {
    let out = lspac(&["coverage", "--x", "1/7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside"));
}

#[test]
fn tampered_coverage_exit_one() {
    let ok = lspac(&["verify-coverage", "--x", "1/10", "--n-max", "10"]);
    assert_eq!(ok.status.code(), Some(0));
    let out = lspac(&["verify-coverage", "--x", "1/10", "--n-max", "10", "--tamper-index", "13", "--tamper-digit", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified"], false);
    let labels: Vec<&str> = v["witnesses"].as_array().unwrap().iter().map(|w| w["label"].as_str().unwrap()).collect();
    assert!(labels.iter().any(|l| l.starts_with("violated:") && l.contains("k = 13")));
}

#[test]
fn splice_budget_exit_three() {
    let args = ["splice", "--moduli", "per:2", "--moduli", "per:3", "--epsilon", "1/12", "--epsilon", "1/1000000"];
    let mut small = args.to_vec();
    small.extend(["--budget", "5"]);
    assert_eq!(lspac(&small).status.code(), Some(3));
    let v = json(&args);
    assert_eq!(v["verified"], true);
    assert_eq!(v["targets"], serde_json::json!(["1/3", "1/4"]));
}

#[test]
fn json_is_deterministic() {
    for args in [&["theorem1-scan", "--period-bound", "8"][..], &["adjacent-gap", "--n", "3"], &["refine", "--depth", "5"]] {
        assert_eq!(lspac(args).stdout, lspac(args).stdout, "{args:?}");
    }
}

#[test]
fn markov_values() {
    assert_eq!(json(&["markov-word", "--n", "4"])["word"], serde_json::json!([3, 2, 2, 3, 3]));
    let v = json(&["lambda", "--n", "3", "--witness"]);
    assert_eq!(v["lambda"], "3/13");
    assert_eq!(v["verified"], true);
    assert_eq!(json(&["gamma", "--n", "2"])["gamma"], "8/5");
    let e = json(&["lambda0", "--terms", "2"]);
    assert_eq!(e["enclosure"], serde_json::json!({"lo": "1/6", "hi": "1/4"}));
    assert_eq!(json(&["shift-order", "--n", "7"])["verified"], true);
    assert_eq!(json(&["separation"])["delta"], "1/90");
}

#[test]
fn csv_outputs() {
    let out = lspac(&["theorem1-scan", "--period-bound", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("period,liminf,classification\n\"2\",1/3,lambda_1\n"), "{text}");
    let out = lspac(&["ratio", "--moduli", "per:2", "--levels", "4", "--x-max", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x,A(x),B(x),ratio_num,ratio_den\n1,2,1,2,1\n2,2,2,2,1\n3,2,2,4,3\n");
}

#[test]
fn text_with_decimals() {
    let out = lspac(&["liminf", "--moduli", "per:2,5", "--format", "text", "--decimals", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "moduli: per:2,5\nliminf: 1/9 (0.1111)\n");
    let v = json(&["liminf", "--moduli", "per:2,5", "--decimals", "3"]);
    assert_eq!(v["liminf_decimal"], "0.111");
}

#[test]
fn complements_commands() {
    let v = json(&["pair", "--moduli", "per:2,3", "--levels", "4"]);
    assert_eq!(v["bound"], 36);
    assert_eq!(v["unique_representation"], true);
    let v = json(&["theorem-b", "--moduli", "per:3", "--levels", "8"]);
    assert_eq!(v["verified"], true);
    assert_eq!(lspac(&["theorem-b", "--moduli", "per:2,5", "--levels", "6"]).status.code(), Some(2));
    let prefix = json(&["prefix", "--moduli", "pre:6 per:2,3", "--k", "7"]);
    let dk = json(&["dk", "--moduli", "pre:6 per:2,3", "--k", "7"]);
    assert_eq!(prefix["value"], dk["d_k"]);
}

#[test]
fn bound_checks() {
    assert_eq!(json(&["alphabet-bounds", "--k", "4"])["verified"], true);
    assert_eq!(json(&["tail-bound", "--moduli", "per:2,6", "--k", "6"])["verified"], true);
    assert_eq!(json(&["lemma-v", "--moduli", "per:2,3,4"])["verified"], true);
    assert_eq!(json(&["ghat", "--m", "2", "--x", "3/2"])["value"], "3/2");
}
