use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "p3.json", &["--p", "3", "--e", "1", "--k", "2"]);
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["parts"].as_array().unwrap().len(), 10);
    assert_eq!(json["space"]["proj_dim"], 3);
    assert!(json["parts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["kind"] == "nrc" && p["order"] == 3));
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("violations=0 PASS"));
}

#[test]
fn construct_pg72() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "p2.json", &["--p", "2", "--e", "1", "--k", "3"]);
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let parts = json["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 85);
    assert!(parts
        .iter()
        .all(|p| p["kind"] == "tuple" && p["points"].as_array().unwrap().len() == 3));
    assert_eq!(code(&run(&["verify", path.to_str().unwrap()])), 0);
}

#[test]
fn construct_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "a.json", &["--p", "2", "--e", "2", "--k", "2"]);
    let out = run(&["construct", "--p", "2", "--e", "2", "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, std::fs::read(path).unwrap());
}

#[test]
fn output_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let one = construct_to(
        dir.path(),
        "one.json",
        &["--p", "3", "--k", "2", "--jobs", "1"],
    );
    let four = construct_to(
        dir.path(),
        "four.json",
        &["--p", "3", "--k", "2", "--jobs", "4"],
    );
    let again = construct_to(dir.path(), "again.json", &["--p", "3", "--k", "2"]);
    let bytes = std::fs::read(&one).unwrap();
    assert_eq!(bytes, std::fs::read(four).unwrap());
    assert_eq!(bytes, std::fs::read(again).unwrap());
}

#[test]
fn duplicated_point_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "dup.json", &["--p", "3", "--k", "2"]);
    let mut json: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let copy = json["parts"][1]["points"][0].clone();
    json["parts"][0]["points"][0] = copy;
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("duplicate point"), "{text}");
    assert!(text.contains("hole"), "{text}");
    assert!(text.contains("FAIL"));
}

#[test]
fn reducible_field_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "bad.json", &["--p", "2", "--k", "2"]);
    let mut json: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // x^4 + x^2 + 1 = (x^2 + x + 1)^2
    json["field"]["ext_modulus"] = serde_json::json!([[1], [0], [1], [0], [1]]);
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    assert_eq!(code(&run(&["verify", path.to_str().unwrap()])), 2);
}

#[test]
fn malformed_files_are_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{\"field\": 3}").unwrap();
    assert_eq!(code(&run(&["verify", path.to_str().unwrap()])), 2);
    assert_eq!(
        code(&run(&[
            "verify",
            dir.path().join("missing.json").to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn oversized_and_bad_parameters() {
    assert_eq!(
        code(&run(&["construct", "--p", "3", "--e", "1", "--k", "17"])),
        2
    );
    assert_eq!(code(&run(&["construct", "--p", "3", "--k", "1"])), 2);
    assert_eq!(code(&run(&["construct", "--p", "4", "--k", "2"])), 2);
    assert_eq!(
        code(&run(&[
            "census",
            "spread-base",
            "--p",
            "2",
            "--n",
            "6",
            "--budget",
            "10"
        ])),
        2
    );
    assert_eq!(code(&run(&["census", "cs2", "--p", "2", "--n", "6"])), 2);
    let out = run(&[
        "census",
        "spread-base",
        "--p",
        "2",
        "--n",
        "4",
        "--ext-poly",
        "[1,0,1,0,1]",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn explicit_moduli_are_accepted() {
    let out = run(&[
        "census",
        "spread-base",
        "--p",
        "2",
        "--n",
        "4",
        "--ext-poly",
        "[1,1,0,0,1]",
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "construct",
        "--p",
        "2",
        "--e",
        "2",
        "--base-poly",
        "[1,1,1]",
        "--k",
        "2",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn censuses() {
    let out = run(&["census", "spread-base", "--p", "2", "--e", "1", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("matching=5/35"));
    assert!(stdout(&out).trim_end().ends_with("PASS"));

    let out = run(&["census", "fixed-lines", "--p", "3", "--e", "1", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fixed=2"));

    let out = run(&["census", "fixed-lines", "--p", "2", "--n", "6"]);
    assert!(stdout(&out).contains("fixed=1"));

    let out = run(&[
        "census", "cs2", "--p", "2", "--e", "1", "--n", "6", "--m", "3",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("matching=9/1395 spread=yes"));

    let out = run(&["census", "x4", "--p", "3", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("max=1 norm_rule_mismatches=0"));
}

#[test]
fn psi_checks() {
    let out = run(&[
        "check", "psi", "--p", "2", "--e", "1", "--n", "5", "--h", "3", "--hp", "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("e=21"));
    assert!(stdout(&out).contains("xs=31"));
    let out = run(&[
        "check", "psi", "--p", "2", "--e", "1", "--n", "4", "--h", "2", "--hp", "1",
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "check", "psi", "--p", "3", "--e", "1", "--n", "4", "--h", "3", "--hp", "2",
    ]);
    assert_eq!(code(&out), 2);
    let out = run(&[
        "check", "psi", "--p", "3", "--n", "4", "--h", "2", "--hp", "1", "--budget", "100",
        "--trials", "5", "--seed", "7",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mode=sampled"));
}

#[test]
fn export_spreads() {
    for (kind, n, count) in [
        ("desarguesian", "4", 10),
        ("half", "4", 10),
        ("scattered", "4", 10),
    ] {
        let out = run(&["export-spread", kind, "--p", "3", "--n", n]);
        assert_eq!(code(&out), 0);
        let json: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(json["kind"], kind);
        assert_eq!(json["elements"].as_array().unwrap().len(), count);
    }
    assert_eq!(
        code(&run(&[
            "export-spread",
            "scattered",
            "--p",
            "2",
            "--n",
            "6"
        ])),
        2
    );
}
