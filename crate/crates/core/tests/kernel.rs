use std::path::{Path, PathBuf};

use negint::catalog::{Bindings, Catalog};
use negint::kernel::{check_corpus, Kernel, Script};
use negint::syntax::{alpha_eq, normalize_for_kernel, parse};
use negint::translate::{negative_translate, AtomPolicy};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn adversarial_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/adversarial")
}

fn script(name: &str) -> Script {
    Script::parse(&std::fs::read_to_string(corpus_dir().join(name)).unwrap()).unwrap()
}

fn translated_instance(schema: &str, bindings: &[&str]) -> negint::syntax::Formula {
    let inst = Catalog::standard().instantiate(schema, &Bindings::parse(bindings).unwrap()).unwrap();
    normalize_for_kernel(&negative_translate(&inst, AtomPolicy::Identity))
}

#[test]
fn shipped_corpus_checks() {
    let report = check_corpus(&Kernel::standard(), &corpus_dir()).unwrap();
    assert!(report.entries.len() >= 6);
    assert!(report.all_passed(), "{report}");
}

#[test]
fn corpus_goals_are_translations_of_catalog_instances() {
    let mp1 = translated_instance("MP1", &[]);
    assert!(alpha_eq(&normalize_for_kernel(&script("mp1-g.proof").goal), &mp1));
    let ind = translated_instance("IND", &["?A(x) := E y. x = suc(y)"]);
    assert!(alpha_eq(&normalize_for_kernel(&script("ind-g.proof").goal), &ind));
    let em = normalize_for_kernel(&negative_translate(&parse("?A \\/ ~?A").unwrap(), AtomPolicy::Identity));
    assert!(alpha_eq(&normalize_for_kernel(&script("excluded-middle-g.proof").goal), &em));
}

#[test]
fn every_adversarial_script_fails() {
    let report = check_corpus(&Kernel::standard(), &adversarial_dir()).unwrap();
    assert_eq!(report.entries.len(), 4);
    for e in &report.entries {
        assert!(!e.passed(), "{} was accepted", e.name());
    }
}

#[test]
fn one_adversarial_script_among_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    std::fs::copy(adversarial_dir().join("conditional-gen-free.proof"), dir.path().join("zz-bad.proof")).unwrap();
    let report = check_corpus(&Kernel::standard(), dir.path()).unwrap();
    let failed: Vec<_> = report.entries.iter().filter(|e| !e.passed()).map(|e| e.name()).collect();
    assert_eq!(failed, ["zz-bad.proof"]);
}

#[test]
fn corpus_scripts_survive_weakening() {
    let k = Kernel::standard();
    for name in ["mp1-g.proof", "dns0-converse.proof", "equality-stability.proof", "ind-g.proof"] {
        let s = script(name);
        for ext in ["IA1", "IRA", "B", "C", "I", "MRA", "IA1 + MP1", "B + DNS1"] {
            let j = k.check_in(&s, ext).unwrap();
            assert!(j.is_checked(), "{name} in {ext}: {j}");
        }
    }
}

#[test]
fn arithmetic_scripts_fail_in_pure_logic() {
    let k = Kernel::standard();
    let j = k.check_in(&script("ind-g.proof"), "PL").unwrap();
    assert!(!j.is_checked());
    assert!(k.check_in(&script("ind-g.proof"), "NOPE").is_err());
}

#[test]
fn checking_is_deterministic_across_threads() {
    let k = Kernel::standard();
    let s = script("equality-stability.proof");
    let first = k.check(&s).unwrap();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4).map(|_| scope.spawn(|| k.check(&s).unwrap())).collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), first);
        }
    });
}
