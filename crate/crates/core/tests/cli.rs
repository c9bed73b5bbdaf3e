mod common;

use serde_json::Value;

fn report(command: &str, name: &str, extra: &[&str]) -> (Value, i32) {
    let (out, code) = common::run_cli(command, name, extra);
    (serde_json::from_slice(&out).expect("JSON report"), code)
}

#[test]
fn reports_are_deterministic_and_cover_the_library() {
    let o = common::cli_suite();
    assert!(o.passed, "{}", o.detail);
}

#[test]
fn symplectic_plane_passes_check() {
    let (r, code) = report("check", "symplectic_plane", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["outputs"]["rank"], 2);
    assert_eq!(r["outputs"]["e_space"].as_array().unwrap().len(), 2);
}

#[test]
fn broken_square_names_the_invariant() {
    let (r, code) = report("check", "bad_square", &[]);
    assert_eq!(code, 1);
    assert_eq!(r["checks"]["square"]["status"], "fail");
    assert!(!r["checks"]["square"]["residuals"].as_array().unwrap().is_empty());
}

#[test]
fn non_integrable_structure_fails_both_integrability_checks() {
    let (r, code) = report("check", "non_integrable", &[]);
    assert_eq!(code, 1);
    assert_eq!(r["checks"]["integrability"]["status"], "fail");
    assert_eq!(r["checks"]["integrability_agreement"]["status"], "pass");
}

#[test]
fn holomorphic_fixture_linearizes_to_the_plane() {
    let (r, code) = report("linearize", "holomorphic_poisson", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["class"], "non-abelian plane");
    assert_eq!(r["outputs"]["complex_dim"], 2);
    assert_eq!(r["checks"]["witness"]["status"], "pass");
    for c in ["antisymmetry", "jacobi", "a_squared", "a_bilinear"] {
        assert_eq!(r["checks"][c]["status"], "pass", "{c}");
    }
}

#[test]
fn orthcomp_reports_the_oracle_only_when_it_applies() {
    let (r, _) = report("orthcomp", "mixed_constant", &["--subspace", "W"]);
    assert_eq!(r["checks"]["omega_oracle"]["status"], "pass");
    assert_eq!(r["outputs"]["is_gc"], true);
    let (r, code) = report("orthcomp", "mixed_constant", &["--subspace", "line"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "unsupported");
}

#[test]
fn normalform_recovers_a_closed_bfield() {
    let (r, code) = report("normalform", "product_chart", &[]);
    assert_eq!(code, 0, "{r}");
    for c in ["lie_xp", "lie_xq", "iota_xp", "iota_xq", "closed", "ftc", "restored_splits", "extension_closed"] {
        assert_eq!(r["checks"][c]["status"], "pass", "{c}");
    }
}

#[test]
fn input_errors_produce_an_error_report() {
    let (r, code) = report("check", "malformed", &[]);
    assert_eq!(code, 2);
    assert_eq!(r["checks"]["input"]["status"], "error");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_gckit"))
        .args(["check", "--input", "/nonexistent/doc.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pretty_mode_renders_the_same_checks() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_gckit"))
        .args(["check", "--pretty", "--input"])
        .arg(common::fixture("bad_square"))
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[fail] square"), "{text}");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_do_not_depend_on_the_document_path() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("copy.json");
    std::fs::copy(common::fixture("holomorphic_poisson"), &copy).unwrap();
    let (original, _) = common::run_cli("check", "holomorphic_poisson", &[]);
    let out =
        std::process::Command::new(env!("CARGO_BIN_EXE_gckit")).args(["check", "--input"]).arg(&copy).output().unwrap();
    assert_eq!(out.stdout, original);
}
