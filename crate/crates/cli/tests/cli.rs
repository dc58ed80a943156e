use std::fs;

use regver::run_with;
use serde_json::{json, Value};

fn regver(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("regver").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = regver(args);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn factorial_lemma_small() {
    let (code, r) = report(&["verify", "factorial-lemma", "--max-p", "10"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["checks"], 66);
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn expand_t1_latex() {
    let (code, out, _) = regver(&["expand", "tm", "--m", "1", "--format", "latex"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "u_{1}");
}

#[test]
fn expand_json_forms() {
    for form in ["tm", "wm", "gm", "goncharov"] {
        let (code, out, _) = regver(&["expand", form, "--m", "2", "--format", "json"]);
        assert_eq!(code, 0, "{form}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["form"], form);
        assert!(!v["terms"].as_array().unwrap().is_empty(), "{form}");
    }
    let (code, out, _) = regver(&["expand", "mnm", "--n", "1", "--m", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"], json!({"n": 1, "m": 1}));
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "tm-identity", "--m", "0"][..],
        &["verify", "recursion", "--m", "1"],
        &["verify", "takeda", "--m", "3", "--i", "4"],
        &["verify", "mixed-boundary", "--n", "0", "--m", "0"],
        &["verify", "no-such-suite"],
        &["verify", "tm-identity"],
        &["all", "--level", "medium"],
    ] {
        let (code, _, err) = regver(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, out, _) = regver(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn perturbed_coefficient_fails_with_counterexample() {
    let (code, r) = report(&["verify", "goncharov-wang", "--m", "3", "--perturb-coefficient", "1"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    let suite = &r["suites"][0];
    assert_eq!(suite["params"]["perturbed_j"], 1);
    assert!(!suite["counterexamples"].as_array().unwrap().is_empty());
    // Out-of-range j changes nothing.
    let (code, _) = report(&["verify", "goncharov-wang", "--m", "3", "--perturb-coefficient", "9"]);
    assert_eq!(code, 0);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    let (_, a) = report(&["all", "--level", "quick"]);
    let (_, b) = report(&["all", "--level", "quick"]);
    assert_eq!(strip(a.clone()), strip(b));
    let keys: Vec<&str> = a["suites"].as_array().unwrap().iter().map(|s| s["key"].as_str().unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = regver(&["verify", "vanishing", "--m", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "verify vanishing");
}

#[test]
fn every_verify_subcommand_runs() {
    for args in [
        &["verify", "tm-identity", "--m", "2"][..],
        &["verify", "takeda", "--m", "3"],
        &["verify", "takeda", "--m", "3", "--i", "2"],
        &["verify", "prop52", "--m", "3"],
        &["verify", "recursion", "--m", "3"],
        &["verify", "recursion", "--m", "3", "--log"],
        &["verify", "log-differential", "--m", "3"],
        &["verify", "goncharov-wang", "--m", "3"],
        &["verify", "binomial", "--max-n", "12"],
        &["verify", "wang-boundary", "--m", "2"],
        &["verify", "goncharov-boundary", "--m", "2"],
        &["verify", "mixed-boundary", "--n", "1", "--m", "2"],
        &["verify", "vanishing", "--m", "3"],
        &["verify", "homological", "--count", "5", "--seed", "3"],
    ] {
        let (code, r) = report(args);
        assert_eq!(code, 0, "{args:?}: {r}");
        assert_eq!(r["status"], "pass", "{args:?}");
    }
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn homology_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    // ℤ --2--> ℤ in degrees 1 → 0: H₀ = ℤ/2, H₁ = 0.
    let f = write(&dir, "c.json", r#"{"degrees": [0, 1], "ranks": {"0": 1, "1": 1}, "differentials": {"1": [[2]]}}"#);
    let (code, out, _) = regver(&["homology", "--input", &f]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["homology"],
        json!([{"degree": 0, "rank": 0, "torsion": ["2"]}, {"degree": 1, "rank": 0, "torsion": []}])
    );
    let (_, out, _) = regver(&["homology", "--input", &f, "--degree", "-3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["homology"], json!([{"degree": -3, "rank": 0, "torsion": []}]));
}

#[test]
fn complex_check_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(&dir, "good.json", r#"{"degrees": [0, 2], "ranks": {"0": 1, "1": 1, "2": 1}, "differentials": {"1": [[0]], "2": [[3]]}}"#);
    assert_eq!(regver(&["complex", "check", "--input", &good]).0, 0);

    let bad = write(&dir, "bad.json", r#"{"degrees": [0, 2], "ranks": {"0": 1, "1": 1, "2": 1}, "differentials": {"1": [[1]], "2": [[1]]}}"#);
    let (code, out, _) = regver(&["complex", "check", "--input", &bad]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(!v["suites"][0]["counterexamples"].as_array().unwrap().is_empty());

    let shape = write(&dir, "shape.json", r#"{"degrees": [0, 1], "ranks": {"0": 1, "1": 1}, "differentials": {"1": [[1, 2]]}}"#);
    let (code, _, err) = regver(&["complex", "check", "--input", &shape]);
    assert_eq!(code, 2);
    assert!(err.contains("differentials.1[0]"), "{err}");

    let syntax = write(&dir, "syntax.json", "{\n  \"degrees\": [0,\n}");
    let (code, _, err) = regver(&["homology", "--input", &syntax]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = regver(&["homology", "--input", "/nonexistent/x.json"]);
    assert_eq!(code, 2);
}

#[test]
fn cubical_files_are_recognised() {
    let dir = tempfile::tempdir().unwrap();
    let c = regver_core::homology::representable(1, 2);
    let text = serde_json::to_string(&regver_core::homology::io::cubical_to_json(&c)).unwrap();
    let f = write(&dir, "cube.json", &text);
    let (code, out, _) = regver(&["complex", "check", "--input", &f]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("cubical-check"));

    // Break δ₁⁰σ₁ = id by zeroing a degeneracy.
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let degs = v["degeneracies"].as_array_mut().unwrap();
    let m = degs[0]["matrix"].as_array_mut().unwrap();
    for row in m.iter_mut() {
        for x in row.as_array_mut().unwrap() {
            *x = json!(0);
        }
    }
    let f = write(&dir, "broken.json", &v.to_string());
    let (code, _, _) = regver(&["complex", "check", "--input", &f]);
    assert_eq!(code, 1);
}

#[test]
fn thread_count_from_environment() {
    let bin = env!("CARGO_BIN_EXE_regver");
    let run = |threads: &str| {
        std::process::Command::new(bin)
            .args(["verify", "goncharov-wang", "--m", "4"])
            .env("REGVER_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    let four = run("4");
    let strip = |bytes: &[u8]| {
        let mut v: Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(strip(&one.stdout), strip(&four.stdout));
    assert_eq!(run("zero").status.code(), Some(2));
}
