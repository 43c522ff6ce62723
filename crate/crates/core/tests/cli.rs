//! The `negint` binary end to end: exit codes, reports and file outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn negint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negint")).args(args).env_remove("NEGINT_CATALOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn translate_writes_the_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let o = negint(&["translate", path(&manifest("tests/data/intro.formulas")), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(manifest("data/golden/v1/intro.g.txt")).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden);
}

#[test]
fn strict_policy_negates_atoms() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    std::fs::write(&input, "x = 0 \\/ E y. x = y\n").unwrap();
    let o = negint(&["translate", path(&input), "--policy", "strict", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["output"], "~(~~~x = 0 & ~~A y. ~~~x = y)");
}

#[test]
fn records_are_byte_identical_across_runs() {
    let corpus = manifest("corpus");
    let args = ["check", "--format", "records", path(&corpus)];
    let (a, b) = (negint(&args), negint(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, items) = lines.split_last().unwrap();
    assert_eq!(summary["kind"], "summary");
    assert_eq!(summary["total"], items.len());
    // Items come in input order.
    let names: Vec<&str> = items.iter().map(|i| i["label"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn a_bad_script_among_good_ones_fails_alone() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(manifest("corpus")).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    std::fs::copy(manifest("tests/data/adversarial/conditional-gen-free.proof"), dir.path().join("bad.proof")).unwrap();
    let o = negint(&["corpus", path(dir.path()), "--format", "records"]);
    assert_eq!(o.status.code(), Some(1));
    let failed: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|r| r["status"] == "failed")
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["label"], "bad.proof");
}

#[test]
fn usage_and_configuration_errors_exit_2() {
    assert_eq!(negint(&["check", path(&manifest("corpus")), "--theory", "NOPE"]).status.code(), Some(2));
    assert_eq!(negint(&["translate", "/nonexistent/input"]).status.code(), Some(2));
    assert_eq!(negint(&["bogus"]).status.code(), Some(2));
    assert_eq!(negint(&["translate"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_negint"))
        .args(["instantiate", "MP1"])
        .env("NEGINT_CATALOG", "/nonexistent/catalog.jsonl")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_override_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("catalog.jsonl");
    let line = r#"{"kind":"schema","name":"TOY","doc":"toy","template":"?A -> ?A","examples":[]}"#;
    std::fs::write(&cat, format!("{line}\n")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_negint"))
        .args(["instantiate", "TOY", "--bind", "?A := 0 = 0"])
        .env("NEGINT_CATALOG", &cat)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("0 = 0 -> 0 = 0"));
}

#[test]
fn eval_reports_unknown_as_success_and_missing_env_as_failure() {
    let dir = tempfile::tempdir().unwrap();
    let env = dir.path().join("env.txt");
    std::fs::write(&env, "$alpha = table {} default 0\n").unwrap();
    let f = dir.path().join("f.txt");
    std::fs::write(&f, "E x. $alpha(x) = 1\n").unwrap();
    let o = negint(&["eval", path(&f), "--env", path(&env), "--bound", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unknown (N=20"), "{}", stdout(&o));

    std::fs::write(&f, "E x. $alpha(x) = 1\n$beta(0) = 0\n").unwrap();
    let o = negint(&["eval", path(&f), "--env", path(&env)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL line 2"));

    let w = dir.path().join("w.txt");
    std::fs::write(&w, "4\n").unwrap();
    let o = negint(&["eval", path(&w), "--env", path(&env), "--construction", "rho", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["output"], "0");

    std::fs::write(&env, "$alpha = nonsense\n").unwrap();
    assert_eq!(negint(&["eval", path(&w), "--env", path(&env)]).status.code(), Some(2));
}

#[test]
fn classify_lists_classes() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    std::fs::write(&f, "A x. ~x = 0\n").unwrap();
    let o = negint(&["classify", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("negative"), "{}", stdout(&o));
}
