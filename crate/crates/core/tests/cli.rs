use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_degenlab");

fn run(args: &[&str], catalog: Option<&Path>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("DEGENLAB_CATALOG");
    if let Some(dir) = catalog {
        cmd.env("DEGENLAB_CATALOG", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn export() -> (tempfile::TempDir, PathBuf) {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("catalog");
    let o = run(&["catalog", "export", "--dir", dir.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (tmp, dir)
}

fn fixture(dir: &Path, kind: &str, prefix: &str) -> String {
    let mut hits: Vec<_> = fs::read_dir(dir.join(kind))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with(prefix))
        .collect();
    assert_eq!(hits.len(), 1, "{kind}/{prefix}*");
    hits.pop().unwrap().to_string_lossy().into_owned()
}

fn edit_json(path: &Path, f: impl FnOnce(&mut Vec<Value>)) {
    let mut v: Vec<Value> = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

#[test]
fn export_writes_every_fixture() {
    let (_tmp, dir) = export();
    let count = |k: &str| fs::read_dir(dir.join(k)).unwrap().count();
    assert_eq!(count("algebras"), 28);
    assert_eq!(count("witnesses"), 28);
    assert_eq!(count("certificates"), 56);
}

#[test]
fn verify_deg_exit_codes() {
    let (_tmp, dir) = export();
    let good = run(&["verify-deg", &fixture(&dir, "witnesses", "12_01_")], None);
    assert_eq!(code(&good), 0);
    assert!(stdout(&good).contains("Verified"));

    let flagged = run(&["verify-deg", &fixture(&dir, "witnesses", "12_04_")], None);
    assert_eq!(code(&flagged), 1);
    assert!(stdout(&flagged).contains("WrongLimit"));

    let json = run(&["verify-deg", "--format", "json", &fixture(&dir, "witnesses", "12_04_")], None);
    let report: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(report["verdicts"][0]["status"], "WrongLimit");
    assert_eq!(report["exit_code"], 1);
}

#[test]
fn verify_nondeg_exit_codes() {
    let (_tmp, dir) = export();
    let valid = run(&["verify-nondeg", &fixture(&dir, "certificates", "12_01_")], None);
    assert_eq!(code(&valid), 0);
    let external = fixture(&dir, "certificates", "21_20_");
    assert_eq!(code(&run(&["verify-nondeg", &external], None)), 2);
    assert_eq!(code(&run(&["verify-nondeg", "--allow-external", &external], None)), 0);
}

#[test]
fn components_json_lists_seven_per_variety() {
    for v in ["1,2", "2,1"] {
        let o = run(&["components", "--variety", v], None);
        assert_eq!(code(&o), 0);
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["components"].as_array().unwrap().len(), 7, "variety {v}");
    }
}

#[test]
fn graph_reports_undecided_pairs() {
    let (_tmp, dir) = export();
    edit_json(&dir.join("certificates.json"), |certs| {
        let before = certs.len();
        certs.retain(|c| !(c["source"] == "S_1^2" && c["target"] == "S_2^3"));
        assert_eq!(certs.len(), before - 1);
    });
    let o = run(&["graph", "--variety", "1,2"], Some(&dir));
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("S_1^2") && err.contains("S_2^3"), "{err}");
    // the other variety is untouched
    assert_eq!(code(&run(&["graph", "--variety", "2,1"], Some(&dir))), 0);
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(code(&run(&["no-such-command"], None)), 64);
    assert_eq!(code(&run(&["graph", "--variety", "banana"], None)), 64);
    assert_eq!(code(&run(&["--help"], None)), 0);

    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{ \"source\": ").unwrap();
    assert_eq!(code(&run(&["verify-deg", bad.to_str().unwrap()], None)), 65);
    assert_eq!(code(&run(&["check-jordan", "S_99^3"], None)), 65);
}

#[test]
fn corrupted_constant_fails_reproduce_naming_the_entry() {
    let (_tmp, dir) = export();
    edit_json(&dir.join("algebras.json"), |algs| {
        let e = algs.iter_mut().find(|a| a["name"] == "S_4^3").unwrap();
        e["expected_aut_dim"] = Value::from(7);
    });
    let o = run(&["reproduce-paper", "--variety", "1,2"], Some(&dir));
    assert_eq!(code(&o), 1);
    let text = format!("{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(text.contains("S_4^3"), "{text}");
}

#[test]
fn reproduce_is_deterministic_and_restrictable() {
    let args = ["reproduce-paper", "--variety", "2,1", "--format", "json"];
    let (a, b) = (run(&args, None), run(&args, None));
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let subjects: Vec<&str> = report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["subject"].as_str().unwrap())
        .collect();
    assert!(subjects.contains(&"graph 2,1"));
    assert!(!subjects.iter().any(|s| s.contains("1,2")), "{subjects:?}");

    let dot = ["graph", "--variety", "1,2", "--mode", "closure"];
    assert_eq!(run(&dot, None).stdout, run(&dot, None).stdout);
}
