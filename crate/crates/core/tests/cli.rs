use std::process::Command;

use jordan_core::cli::{exit, run, Outcome};
use serde_json::Value;

fn jordan(args: &[&str]) -> Outcome {
    run(std::iter::once("jordan").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.stdout.lines().count(), 1, "stdout: {}", out.stdout);
    serde_json::from_str(&out.stdout).expect("one JSON document")
}

const ASSOCIATOR: &str = "(x1*x2)*x3 - x1*(x2*x3)";

#[test]
fn classify_associator() {
    for n in ["3", "4", "6", "10"] {
        let out = jordan(&["--json", "--n", n, "classify", ASSOCIATOR]);
        assert_eq!(out.code, exit::SUCCESS, "{}", out.stderr);
        let doc = json(&out);
        assert_eq!(doc["class"], "pure");
        assert!(doc["real_witness"].is_null());
        assert_eq!(doc["pure_witness"]["parity"], "odd");
    }
}

#[test]
fn classify_text_output() {
    let out = jordan(&["classify", "x1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("class: full\n"));
}

#[test]
fn eval_basis_inputs() {
    let out = jordan(&["eval", ASSOCIATOR, "--assign", "x1=e1", "--assign", "x2=e1", "--assign", "x3=e2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "0 + [0, 1]\n");
}

#[test]
fn eval_infers_dimension_and_uses_models() {
    let out = jordan(&["--json", "eval", "x*y", "--assign", "x=1 + [1, 2, 3]", "--assign", "y=e3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json(&out)["value"], "3 + [0, 0, 1]");

    let out = jordan(&["--json", "--model", "hermitian", "eval", "x*y", "--assign", "x=1 + [1, 2, 3]", "--assign", "y=e3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!(doc["spin_value"], "3 + [0, 0, 1]");
    assert_eq!(doc["value"]["level"], "complex");
}

#[test]
fn eval_from_file() {
    let dir = std::env::temp_dir().join(format!("jordan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("assign.txt");
    std::fs::write(&path, "# inputs\nx1 = e1\nx2 = 2 + [0, 1]\n").unwrap();
    let out = jordan(&["eval", "x1*x2", "--assign-file", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "0 + [2, 0]\n");
}

#[test]
fn eval_missing_assignment_is_precondition() {
    let out = jordan(&["eval", "x1*x2", "--assign", "x1=e1"]);
    assert_eq!(out.code, exit::PRECONDITION);
    assert!(out.stderr.contains("x2"), "{}", out.stderr);
}

#[test]
fn hermitian_float_rejected() {
    let out = jordan(&["--model", "hermitian", "--scalar-mode", "float", "eval", "x1", "--assign", "x1=e1"]);
    assert_eq!(out.code, exit::PRECONDITION);
}

#[test]
fn witness_for_identity_and_product() {
    for expr in ["x1", "x1*x2"] {
        let out = jordan(&["--json", "witness", expr, "--target", "2 + [1, 1, 0]"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let doc = json(&out);
        assert!(doc["residual"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn witness_requires_full_image() {
    let out = jordan(&["--json", "witness", ASSOCIATOR, "--target", "1 + [1, 0]"]);
    assert_eq!(out.code, exit::PRECONDITION);
    assert!(json(&out)["error"].as_str().unwrap().contains("pure"));
}

#[test]
fn orbit_decisions() {
    let out = jordan(&["--json", "orbit", "1 + [5, 0, 0]", "1 + [3, 4, 0]"]);
    assert_eq!(out.code, 0);
    let doc = json(&out);
    assert_eq!(doc["equivalent"], true);
    assert!(doc["residual"].as_f64().unwrap() <= 1e-9);

    let out = jordan(&["--json", "orbit", "1 + [5, 0, 0]", "2 + [3, 4, 0]"]);
    assert_eq!(json(&out)["equivalent"], false);
}

#[test]
fn models_verify_all_levels() {
    let out = jordan(&["--json", "models-verify", "--pairs", "10"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["models"].as_array().unwrap().len(), 4);
    let out = jordan(&["models-verify", "octonion", "--pairs", "5"]);
    assert!(out.stdout.contains("J_10"));
}

#[test]
fn monomial_listing() {
    let out = jordan(&["monomials", "3"]);
    assert_eq!(out.stdout, "((x1*x2)*x3)\n((x1*x3)*x2)\n((x2*x3)*x1)\n");
    let out = jordan(&["--json", "monomials", "5", "--count"]);
    assert_eq!(json(&out)["count"], 105);
    assert_eq!(jordan(&["monomials", "0"]).code, exit::PRECONDITION);
    assert_eq!(jordan(&["monomials", "9"]).code, exit::RESOURCE_BOUND);
}

#[test]
fn parse_errors_and_warnings() {
    let out = jordan(&["classify", "x1*x2*x3"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("warning"));
    assert_eq!(jordan(&["--strict", "classify", "x1*x2*x3"]).code, exit::PARSE_ERROR);
    let out = jordan(&["--json", "classify", "(x1*x2"]);
    assert_eq!(out.code, exit::PARSE_ERROR);
    assert!(json(&out)["error"].is_string());
    assert_eq!(jordan(&["classify", "x1*x1"]).code, exit::PRECONDITION);
    assert_eq!(jordan(&["bogus"]).code, exit::PARSE_ERROR);
}

#[test]
fn tuple_bound() {
    let out = jordan(&["--json", "--n", "10", "--max-tuples", "100", "classify", ASSOCIATOR]);
    assert_eq!(out.code, exit::RESOURCE_BOUND);
    assert!(json(&out)["error"].as_str().unwrap().contains("cap"));
    let out = jordan(&["--n", "10", "--max-tuples", "2", "classify", "x1"]);
    assert_eq!(out.code, exit::SUCCESS);
}

#[test]
fn selftest_passes() {
    let out = jordan(&["selftest"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("PASS"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_jordan");
    let ok = Command::new(bin).args(["--json", "classify", ASSOCIATOR]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["class"], "pure");
    let bad = Command::new(bin).args(["classify", "x1 +"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}

#[test]
fn shorthand_elements() {
    let out = jordan(&["eval", "x1", "--assign", "x1=1"]);
    assert_eq!(out.stdout, "1 + [0, 0]\n");
    let out = jordan(&["--json", "witness", "x1", "--target", "2 + 3e1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!(doc["residual"], 0.0);
    assert_eq!(doc["assignment"]["x1"], "2.0 + [3.0, 0.0]");
}

#[test]
fn hermitian_eval_matches_spin() {
    for n in ["3", "4", "6", "10"] {
        let assign = ["--assign", "x1=1/2 + e1 - 2e2", "--assign", "x2=e2 + 3e1", "--assign", "x3=-1 + e2"];
        let mut spin = vec!["--json", "--n", n, "eval", ASSOCIATOR];
        spin.extend(assign);
        let mut herm = vec!["--json", "--n", n, "--model", "hermitian", "eval", ASSOCIATOR];
        herm.extend(assign);
        let (s, h) = (json(&jordan(&spin)), json(&jordan(&herm)));
        assert_eq!(s["value"], h["spin_value"], "J_{n}");
    }
}
