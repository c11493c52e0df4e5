use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_opineq"));
    c.env_remove("OPINEQ_TOL");
    c
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn list_names_every_check() {
    let o = bin().arg("list").output().unwrap();
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() >= 14);
    assert!(text.contains("reverse_monotonicity") && text.contains("lh_extension"));
}

#[test]
fn repro_succeeds_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("repro.json");
    let o = bin().arg("repro").arg("--json").arg(&out).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn eval_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let eval = |check: &str, input: &Path| code(&bin().args(["eval", "--check", check, "--input"]).arg(input).output().unwrap());

    assert_eq!(eval("furuta_bounds", &docs().join("examples/e1_furuta_bounds.json")), 0);
    assert_eq!(eval("seo_bound", &docs().join("examples/e2_seo_bound.json")), 0);

    let fails = write(dir.path(), "lh.json", r#"{"A": [[1, 1], [1, 1]], "B": [[2, 1], [1, 1]], "p": 2}"#);
    assert_eq!(eval("lowner_heinz", &fails), 1);

    let unordered = write(dir.path(), "swap.json", r#"{"A": [[2, 1], [1, 1]], "B": [[1, 1], [1, 1]], "p": 0.5}"#);
    assert_eq!(eval("lowner_heinz", &unordered), 4);

    let malformed = write(dir.path(), "bad.json", r#"{"A": [[1, 2]], "p": 0.5}"#);
    assert_eq!(eval("lowner_heinz", &malformed), 5);
    let junk = write(dir.path(), "junk.json", "not json");
    assert_eq!(eval("lowner_heinz", &junk), 5);
    assert_eq!(eval("no_such_check", &fails), 5);
    assert_eq!(eval("lowner_heinz", &dir.path().join("missing.json")), 3);
}

#[test]
fn eval_honours_tolerance_override() {
    let o = bin()
        .env("OPINEQ_TOL", "abc")
        .args(["eval", "--check", "furuta_bounds", "--input"])
        .arg(docs().join("examples/e1_furuta_bounds.json"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 5);
}

#[test]
fn fuzz_writes_reports_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (json, csv) = (dir.path().join("r.json"), dir.path().join("r.csv"));
    let o = bin()
        .args(["fuzz", "--check", "info_monotonicity", "--trials", "40", "--dim", "3", "--p", "-0.5,0.5", "--seed", "9"])
        .arg("--json")
        .arg(&json)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let reports: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 40);
    assert!(reports.iter().all(|r| r["params"]["dim"] == 3));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "check_id,dim,p,m,M,gap_min_eig,verdict,seed,trial");
    assert_eq!(text.lines().count(), 41);
}

#[test]
fn fuzz_with_zero_trials_writes_empty_array() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = bin().args(["fuzz", "--check", "mn2012", "--trials", "0", "--json"]).arg(&json).output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(json).unwrap().trim(), "[]");
}

#[test]
fn fuzz_failure_leaves_replayable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = bin()
        .args(["fuzz", "--check", "lowner_heinz", "--trials", "10000", "--p", "2", "--seed", "1", "--json"])
        .arg(&json)
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let sidecar = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.to_string_lossy().ends_with(".witness.json"))
        .expect("witness sidecar");
    let w: serde_json::Value = serde_json::from_slice(&std::fs::read(&sidecar).unwrap()).unwrap();
    assert_eq!(w["report"]["verdict"], "FAILS");
    let inst = write(dir.path(), "inst.json", &w["instance"].to_string());
    let o = bin().args(["eval", "--check", "lowner_heinz", "--input"]).arg(inst).output().unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn fuzz_input_and_io_errors() {
    let o = bin().args(["fuzz", "--check", "nope", "--trials", "5"]).output().unwrap();
    assert_eq!(code(&o), 5);
    let o = bin().args(["fuzz", "--check", "mn2012", "--dim", "x"]).output().unwrap();
    assert_eq!(code(&o), 5);
    let o = bin().args(["fuzz", "--check", "mn2012", "--trials", "3", "--json", "/nonexistent/dir/r.json"]).output().unwrap();
    assert_eq!(code(&o), 3);
    let o = bin().args(["fuzz", "--bogus"]).output().unwrap();
    assert_eq!(code(&o), 5);
}

#[test]
fn tolerance_override_changes_verdicts() {
    // a huge tolerance absorbs any failure
    let o = bin()
        .env("OPINEQ_TOL", "1e6")
        .args(["fuzz", "--check", "lowner_heinz", "--trials", "200", "--p", "2", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn schemas_are_valid_json() {
    for name in ["instance", "report", "fuzz-report", "witness", "repro"] {
        let text = std::fs::read_to_string(docs().join(format!("{name}.schema.json"))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("$schema").is_some(), "{name}");
    }
}
