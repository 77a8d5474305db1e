use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use star_spectral::cli::{run, MatrixFile};
use star_spectral::matrix::StarMatrix;
use star_spectral::scalars::REAL;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn starspec(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("starspec").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn svd_of_zero_matrix_has_zero_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let (code, text, _) = starspec(&["decompose", "--kind", "svd", "--input", fixture("real_zero_3.json").to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("residual 0e0"));
    let b: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let s = b["factors"]["S"]["entries"].as_array().unwrap();
    assert!(s.iter().flat_map(|r| r.as_array().unwrap()).all(|e| e[0].as_f64() == Some(0.0)));
}

#[test]
fn takagi_rejects_non_symmetric_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let (code, _, err) = starspec(&["decompose", "--kind", "takagi", "--input", fixture("complex_skew_3.json").to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("‖S−Sᵀ‖"), "{err}");
    assert!(!out.exists());
}

#[test]
fn jordan_of_companion_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let (code, text, _) = starspec(&["decompose", "--kind", "jordan", "--input", fixture("rational_companion_3.json").to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.starts_with("blocks J2(1) J1(2)\n"), "{text}");
    let b: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(b["factors"]["J"]["entries"][0][1][0], json!("1"));
    assert_eq!(b["summary"]["bracket_identity"], json!(true));
}

#[test]
fn identity_factors_verify() {
    let dir = tempfile::tempdir().unwrap();
    let id = serde_json::to_value(MatrixFile::from_star(&StarMatrix::identity(REAL, 3))).unwrap();
    let input = write(dir.path(), "i.json", &id);
    let bundle = json!({ "kind": "spectral", "algebra": "real", "factors": { "U": id, "D": id }, "summary": {} });
    let factors = write(dir.path(), "b.json", &bundle);
    let (code, text, _) = starspec(&["verify", "--input", &input, "--factors", &factors]);
    assert_eq!(code, 0);
    assert_eq!(text, "residual 0e0\nunitarity 0e0\n");
}

#[test]
fn oversized_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let big = serde_json::to_value(MatrixFile::from_star(&StarMatrix::identity(REAL, 65))).unwrap();
    let input = write(dir.path(), "big.json", &big);
    let out = dir.path().join("f.json");
    let (code, _, _) = starspec(&["decompose", "--kind", "spectral", "--input", &input, "--output", out.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn parse_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &json!({ "algebra": "octonion", "rows": 1, "cols": 1, "entries": [[[1.0]]] }));
    let out = dir.path().join("f.json");
    let (code, _, _) = starspec(&["decompose", "--kind", "spectral", "--input", &bad, "--output", out.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = starspec(&["spectrum", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = starspec(&["decompose", "--kind", "cholesky"]);
    assert_eq!(code, 2);
}

#[test]
fn kind_must_match_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let (code, _, _) = starspec(&["decompose", "--kind", "jordan", "--input", fixture("real_symmetric_4.json").to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 3);
    let (code, _, _) = starspec(&["decompose", "--algebra", "complex", "--kind", "spectral", "--input", fixture("real_symmetric_4.json").to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn spectrum_of_zero_is_all_zero() {
    let (code, text, _) = starspec(&["spectrum", "--input", fixture("real_zero_3.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["spectrum"]["eigenvalues"], json!([0.0, 0.0, 0.0]));
}

#[test]
fn exact_spectrum_prints_rationals() {
    let (code, text, _) = starspec(&["spectrum", "--input", fixture("rational_lower_block_4.json").to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("1/2"), "{text}");
}

#[test]
fn probe_report_is_deterministic() {
    let args = ["probe", "--algebra", "takagi-algebra", "--dim", "3", "--trials", "30", "--seed", "11"];
    let a = starspec(&args);
    assert_eq!(a.0, 0);
    assert!(a.1.contains("violations 0"));
    assert_eq!(a, starspec(&args));
}
