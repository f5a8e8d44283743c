use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qtoric(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qtoric")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}{}", run.stdout, run.stderr))
}

fn p(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn build(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = p(dir, name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&path)]);
    let r = qtoric(&full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    path
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn build_summaries() {
    let dir = TempDir::new().unwrap();
    let out = p(&dir, "cp2.json");
    let r = json(&qtoric(&["build", "cp", "2", "--out", s(&out)]));
    assert_eq!((r["results"]["q"].as_u64(), r["results"]["sign_sum"].as_i64()), (Some(3), Some(3)));
    let r = json(&qtoric(&["build", "s2n", "2", "--out", s(&p(&dir, "s.json"))]));
    assert_eq!(r["results"]["sign_sum"], 0);
    let r = json(&qtoric(&["build", "brs", "1", "2", "--out", s(&p(&dir, "b.json"))]));
    assert_eq!((r["results"]["n"].as_u64(), r["results"]["m"].as_u64()), (Some(2), Some(4)));

    let desc = qtoric(&["build", "cp", "2"]);
    assert_eq!(desc.code, 0);
    assert_eq!(format!("{}\n", desc.stdout.trim_end()), std::fs::read_to_string(&out).unwrap());
    assert_eq!(json(&desc)["polytope"]["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn negative_parameters_and_flags() {
    let r = json(&qtoric(&["build", "cp-eps", "2", "1", "-1"]));
    assert_eq!(r["lambda_star"], serde_json::json!([[1], [-1]]));
    let r = json(&qtoric(&["build", "cp", "2", "--reverse"]));
    assert!(r["signs"].as_object().unwrap().values().all(|v| v == -1));
    let r = json(&qtoric(&["build", "bott", "2", "3"]));
    assert_eq!(r["lambda_star"], serde_json::json!([[-1, 0], [3, -1]]));
    let r = json(&qtoric(&["build", "cube-polytope", "2"]));
    assert_eq!(r["halfspaces"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(qtoric(&["build", "torus", "2"]).code, 2);
    assert_eq!(qtoric(&["build", "cp", "two"]).code, 2);
    assert_eq!(qtoric(&["frobnicate"]).code, 2);
    assert_eq!(qtoric(&["build", "cube-polytope", "2", "--reverse"]).code, 2);
    let dir = TempDir::new().unwrap();
    let bad = p(&dir, "bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let r = qtoric(&["chern", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"));
    assert_eq!(qtoric(&["signs", s(&p(&dir, "missing.json"))]).code, 2);
}

#[test]
fn hexagon_pipeline() {
    let dir = TempDir::new().unwrap();
    let cp2 = build(&dir, "cp2.json", &["cp", "2"]);
    let clash = qtoric(&["sum", s(&cp2), s(&cp2)]);
    assert_eq!(clash.code, 2);
    assert!(clash.stderr.contains("sign"), "{}", clash.stderr);

    let hex = p(&dir, "hex.json");
    let r = qtoric(&["add", s(&cp2), s(&cp2), "--out", s(&hex)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = json(&r);
    assert_eq!(r["results"]["chern_numbers"]["c2"], 6);
    assert_eq!(r["results"]["chern_numbers"]["c1^2"], 18);
    assert_eq!(check(&r, "chern additivity")["pass"], true);

    let v = qtoric(&["verify", s(&hex)]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    let v = json(&v);
    assert_eq!(v["results"]["sign_sum"], 6);
    assert_eq!(check(&v, "quadric sampling")["pass"], true);

    let c = json(&qtoric(&["chern", s(&hex)]));
    assert_eq!(c["results"]["todd"], "2");
    assert_eq!(c["results"]["verdict"], "no smooth projective toric variety in this cobordism class");
}

#[test]
fn bounding_sum() {
    let dir = TempDir::new().unwrap();
    let cp2 = build(&dir, "cp2.json", &["cp", "2"]);
    let conj = build(&dir, "conj.json", &["cp", "2", "--reverse"]);
    let sq = p(&dir, "sq.json");
    let r = json(&qtoric(&["sum", s(&cp2), s(&conj), "--out", s(&sq)]));
    assert_eq!((r["results"]["q"].as_u64(), r["results"]["sign_sum"].as_i64()), (Some(4), Some(0)));
    let c = json(&qtoric(&["chern", s(&sq)]));
    assert!(c["results"]["chern_numbers"].as_object().unwrap().values().all(|v| v == 0));
}

#[test]
fn m_rs_by_repeated_addition() {
    let dir = TempDir::new().unwrap();
    let cp2 = build(&dir, "cp2.json", &["cp", "2"]);
    let s2 = build(&dir, "s2.json", &["cube", "2"]);
    let m20 = p(&dir, "m20.json");
    let m21 = p(&dir, "m21.json");
    assert_eq!(qtoric(&["add", s(&cp2), s(&cp2), "--out", s(&m20)]).code, 0);
    assert_eq!(qtoric(&["add", s(&m20), s(&s2), "--out", s(&m21)]).code, 0);
    let c = json(&qtoric(&["chern", s(&m21)]));
    assert_eq!(c["results"]["q_minus"], 0);
    assert_eq!(c["results"]["todd"], "3");
    assert_eq!(c["results"]["chern_numbers"]["c2"], 10);
}

#[test]
fn tampered_matrix_fails_verification() {
    let dir = TempDir::new().unwrap();
    let cp2 = build(&dir, "cp2.json", &["cp", "2"]);
    let mut desc: Value = serde_json::from_str(&std::fs::read_to_string(&cp2).unwrap()).unwrap();
    desc["lambda_star"] = serde_json::json!([[2], [-1]]);
    let bad = p(&dir, "bad.json");
    std::fs::write(&bad, serde_json::to_string(&desc).unwrap()).unwrap();
    let r = qtoric(&["verify", s(&bad)]);
    assert_eq!(r.code, 1);
    let r = json(&r);
    let d = check(&r, "dicharacteristic");
    assert_eq!(d["pass"], false);
    assert!(d["detail"].as_str().unwrap().contains("[2, 3]: det -2"));
    assert_eq!(qtoric(&["verify", s(&cp2)]).code, 0);
}

#[test]
fn nonstandard_cp2_is_derived_not_asserted() {
    let dir = TempDir::new().unwrap();
    let m = build(&dir, "eps.json", &["cp-eps", "2", "1", "-1"]);
    let c = json(&qtoric(&["chern", s(&m)]));
    assert_eq!(c["results"]["chern_numbers"]["c2"], 1);
    assert_eq!(c["results"]["chern_numbers"]["c1^2"], -1);
    assert!(c["results"]["open_questions"][0].as_str().unwrap().contains("open question"));
}

#[test]
fn ring_presentation() {
    let dir = TempDir::new().unwrap();
    let m = build(&dir, "cp2.json", &["cp", "2"]);
    let r = json(&qtoric(&["ring", s(&m)]));
    assert_eq!(r["results"]["betti_numbers"], serde_json::json!([1, 1, 1]));
    assert_eq!(r["results"]["basis"], serde_json::json!(["u3^2"]));
    assert_eq!(r["results"]["stanley_reisner"], serde_json::json!(["u1*u2*u3"]));
    let r = json(&qtoric(&["ring", s(&m), "--degree", "1"]));
    assert_eq!(r["results"]["basis"], serde_json::json!(["u3"]));
    assert_eq!(qtoric(&["ring", s(&m), "--degree", "3"]).code, 2);
}

#[test]
fn quadrics_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let poly = build(&dir, "sq.json", &["cube-polytope", "2"]);
    let export = p(&dir, "sys.json");
    let a = qtoric(&["quadrics", "--polytope", s(&poly), "--samples", "20", "--export", s(&export)]);
    let b = qtoric(&["quadrics", "--polytope", s(&poly), "--samples", "20", "--seed", "0"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["results"]["equations"], serde_json::json!(["1|z1|^2 + 1|z3|^2 = 1", "1|z2|^2 + 1|z4|^2 = 1"]));
    let sys: Value = serde_json::from_str(&std::fs::read_to_string(&export).unwrap()).unwrap();
    assert_eq!(sys["m"], 4);
    assert_eq!(sys["equations"][0]["coeffs"], serde_json::json!(["1", "0", "1", "0"]));
    assert_eq!(sys["equations"][0]["constant"], "1");
}

#[test]
fn analogous_shift() {
    let dir = TempDir::new().unwrap();
    let poly = build(&dir, "tri.json", &["simplex-polytope", "2"]);
    let small = p(&dir, "small.json");
    std::fs::write(&small, r#"["1/1000", "0", "0"]"#).unwrap();
    let r = json(&qtoric(&["analogous", "--polytope", s(&poly), "--shift", s(&small)]));
    assert_eq!(r["results"]["classification"], "actual");
    assert_eq!(r["results"]["c_matrix"], serde_json::json!([["1", "1", "1"]]));
    let empty = p(&dir, "empty.json");
    std::fs::write(&empty, r#"["0", "0", "-2"]"#).unwrap();
    let r = json(&qtoric(&["analogous", "--polytope", s(&poly), "--shift", s(&empty)]));
    assert_eq!(r["results"]["classification"], "empty");
    let short = p(&dir, "short.json");
    std::fs::write(&short, r#"["0"]"#).unwrap();
    assert_eq!(qtoric(&["analogous", "--polytope", s(&poly), "--shift", s(&short)]).code, 2);
}
