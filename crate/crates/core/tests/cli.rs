mod common;

use std::path::Path;
use std::process::Command;

use common::random_pair;
use longres::cli::{form_to_json, function_to_json, parse_input_str, Input};
use longres::cli::{run, JobKind, JobSpec, EXIT_FAILURE, EXIT_NOT_POSITIVE_REAL, EXIT_OK};
use longres::polycore::{MatrixForm, RatFn};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const PARALLEL_PAIR: &str = r#"{"d": 2, "num": [["z1*z2"]], "den": "z1 + z2"}"#;
const CHOI: &str = r#"{"d": 3, "form": [
    ["z1^2 + 2*z2^2", "-z1*z2", "-z1*z3"],
    ["-z1*z2", "z2^2 + 2*z3^2", "-z2*z3"],
    ["-z1*z3", "-z2*z3", "z3^2 + 2*z1^2"]]}"#;

fn strings(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().to_owned())
                .collect()
        })
        .collect()
}

#[test]
fn synthesize_parallel_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.json", PARALLEL_PAIR);
    let out = run(&JobSpec::new(JobKind::Synthesize, input));
    assert_eq!(out.code, EXIT_OK);
    let pencil = out.report["pencil"].as_array().unwrap();
    assert_eq!(strings(&pencil[0]["matrix"]), [["0", "0"], ["0", "1"]]);
    assert_eq!(strings(&pencil[1]["matrix"]), [["1", "1"], ["1", "1"]]);
    assert_eq!(out.report["block_split"], serde_json::json!([1, 1]));
    assert_eq!(out.report["verification"].as_array().unwrap().len(), 20);
}

#[test]
fn negative_resistor_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.json", r#"{"d": 1, "num": [["-z1"]], "den": "1"}"#);
    for kind in [JobKind::Check, JobKind::Synthesize] {
        let out = run(&JobSpec::new(kind, input.clone()));
        assert_eq!(out.code, EXIT_NOT_POSITIVE_REAL, "{kind:?}");
    }
}

#[test]
fn check_non_multiaffine_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "f.json",
        r#"{"d": 2, "num": [["z1^2*z2 + 2*z1*z2^2"]], "den": "z1^2 + 3*z1*z2 + z2^2"}"#,
    );
    let out = run(&JobSpec::new(JobKind::Check, input));
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.report["multiaffinized"], true);
    assert_eq!(out.report["status"], "certified_positive");
}

#[test]
fn sos_on_choi_form() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "choi.json", CHOI);
    let out = run(&JobSpec::new(JobKind::Sos, input));
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.report["status"], "not_sos_evidence");
    assert!(out.report.get("certificate").is_none());
}

#[test]
fn sos_certificate_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.json", r#"{"d": 2, "form": [["z1^2 + 2*z1*z2 + z2^2"]]}"#);
    let out = run(&JobSpec::new(JobKind::Sos, input));
    assert_eq!(out.report["status"], "sos_exact");
    assert_eq!(out.report["certificate"]["exact"], true);
}

#[test]
fn polarize_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.json", PARALLEL_PAIR);
    let out = run(&JobSpec::new(JobKind::Polarize { psd_slot: Some(1) }, input.clone()));
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.report["product_identity"], true);
    assert_eq!(out.report["wronskian_identity"], true);
    let out = run(&JobSpec::new(JobKind::Reduce { var: 1, bound: 2 }, input));
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.report["d"], 4);
    assert_eq!(out.report["identifies_back"], true);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "f.json", PARALLEL_PAIR);
    let bad = write(dir.path(), "bad.json", r#"{"d": 2, "num": [["z1*"]], "den": "1"}"#);
    let mut job = JobSpec::new(JobKind::Synthesize, good.clone());
    job.tol = 0.5;
    assert_eq!(run(&job).code, EXIT_FAILURE);
    assert_eq!(run(&JobSpec::new(JobKind::Synthesize, bad)).code, EXIT_FAILURE);
    assert_eq!(run(&JobSpec::new(JobKind::Sos, good)).code, EXIT_FAILURE);
    let missing = dir.path().join("missing.json");
    let out = run(&JobSpec::new(JobKind::Check, missing));
    assert_eq!(out.code, EXIT_FAILURE);
    assert_eq!(out.report["status"], "error");
}

#[test]
fn binary_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.json", PARALLEL_PAIR);
    let output = dir.path().join("out.json");
    let status = Command::new(env!("CARGO_BIN_EXE_longres"))
        .args(["synthesize", input.to_str().unwrap(), "-o", output.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(output).unwrap()).unwrap();
    assert_eq!(report["status"], "ok");

    let neg = write(dir.path(), "neg.json", r#"{"d": 1, "num": [["-z1"]], "den": "1"}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_longres"))
        .args(["check", neg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "violation");

    let out = Command::new(env!("CARGO_BIN_EXE_longres"))
        .args(["frobnicate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "ladder.json",
        r#"{"d": 2, "num": [["z1^2*z2 + 2*z1*z2^2"]], "den": "z1^2 + 3*z1*z2 + z2^2"}"#,
    );
    for kind in [
        JobKind::Synthesize,
        JobKind::Check,
        JobKind::Polarize { psd_slot: None },
    ] {
        let a = run(&JobSpec::new(kind, input.clone()));
        let b = run(&JobSpec::new(kind, input.clone()));
        assert_eq!(a, b, "{kind:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_inverts_serialize(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, p) = random_pair(&mut rng);
        let f = RatFn::new(p.clone(), q).unwrap();
        match parse_input_str(&function_to_json(&f)).unwrap() {
            Input::Function(g) => prop_assert_eq!(g, f),
            Input::Form(_) => prop_assert!(false, "function parsed as a form"),
        }
        let square = p.mul(&p);
        let sym = MatrixForm::symmetric(square.rows(), square.entries().to_vec());
        if let Ok(form) = sym {
            match parse_input_str(&form_to_json(&form)).unwrap() {
                Input::Form(g) => prop_assert_eq!(g, form),
                Input::Function(_) => prop_assert!(false, "form parsed as a function"),
            }
        }
    }
}
