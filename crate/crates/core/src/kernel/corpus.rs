//! Batch checking of a directory of `*.proof` scripts.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use super::{Kernel, Script, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub path: PathBuf,
    pub theory: Option<String>,
    pub goal: Option<String>,
    /// `Ok` when the script checks, otherwise the reason it does not.
    pub outcome: Result<(), String>,
}

impl CorpusEntry {
    pub fn name(&self) -> String {
        self.path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.entries.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.outcome {
                Ok(()) => writeln!(f, "ok   {}", e.name())?,
                Err(why) => writeln!(f, "FAIL {}: {why}", e.name())?,
            }
        }
        write!(f, "{} checked, {} failed", self.passed(), self.failed())
    }
}

fn check_file(kernel: &Kernel, path: &Path) -> CorpusEntry {
    let mut entry = CorpusEntry { path: path.to_path_buf(), theory: None, goal: None, outcome: Ok(()) };
    let script = match std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| Script::parse(&t).map_err(|e| e.to_string())) {
        Ok(s) => s,
        Err(e) => {
            entry.outcome = Err(e);
            return entry;
        }
    };
    entry.theory = Some(script.theory.clone());
    entry.goal = Some(crate::syntax::print(&script.goal));
    entry.outcome = match kernel.check(&script) {
        Err(e) => Err(e.to_string()),
        Ok(j) => match j.verdict {
            Verdict::Checked => Ok(()),
            Verdict::Failed { step, reason } => Err(format!("step {step}: {reason}")),
        },
    };
    entry
}

/// Checks every `*.proof` file in `dir`, in file-name order. Each file is
/// judged on its own, so a broken script does not affect the others.
pub fn check_corpus(kernel: &Kernel, dir: &Path) -> io::Result<CorpusReport> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "proof") && path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(CorpusReport { entries: paths.iter().map(|p| check_file(kernel, p)).collect() })
}
