//! Batch command-line front end. Every command produces a [`RunReport`]
//! with one item per input and renders it as text or as line-delimited
//! JSON records.
//!
//! Exit codes: 0 when every item succeeded, 1 when some item failed, 2 on
//! a usage or configuration error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{Bindings, Catalog};
use crate::kernel::{check_corpus, Kernel, Script, Verdict};
use crate::model::{bar_hit, eval_bounded, make_rho, GammaConstruction, Profile};
use crate::oracle::{parse_env, Env};
use crate::syntax::{parse, print};
use crate::translate::{classify, negative_translate, AtomPolicy};

/// A usage or configuration problem; reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Item {
    pub label: String,
    pub input: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Item {
    fn from_result(label: String, input: String, r: Result<String, String>) -> Item {
        match r {
            Ok(out) => Item { label, input, status: Status::Ok, output: Some(out), error: None },
            Err(e) => Item { label, input, status: Status::Failed, output: None, error: Some(e) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

impl RunReport {
    pub fn failed(&self) -> usize {
        self.items.iter().filter(|i| i.status == Status::Failed).count()
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed() > 0)
    }

    /// Item outputs one per line; failed items become `#` comment lines.
    pub fn outputs(&self) -> String {
        let mut s = String::new();
        for i in &self.items {
            match (&i.output, &i.error) {
                (Some(o), _) => writeln!(s, "{o}"),
                (None, e) => writeln!(s, "# {}: {}", i.label, e.as_deref().unwrap_or("failed")),
            }
            .expect("writing to a string");
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Text => {
                for i in &self.items {
                    match i.status {
                        Status::Ok => writeln!(s, "ok   {}: {}", i.label, i.output.as_deref().unwrap_or("")),
                        Status::Failed => writeln!(s, "FAIL {}: {}", i.label, i.error.as_deref().unwrap_or("")),
                    }
                    .expect("writing to a string");
                }
                writeln!(s, "{}: {} items, {} failed", self.command, self.items.len(), self.failed()).expect("writing to a string");
            }
            Format::Records => {
                #[derive(Serialize)]
                struct ItemRecord<'a> {
                    kind: &'static str,
                    command: &'a str,
                    #[serde(flatten)]
                    item: &'a Item,
                }
                #[derive(Serialize)]
                struct Summary<'a> {
                    kind: &'static str,
                    command: &'a str,
                    inputs: &'a [String],
                    total: usize,
                    failed: usize,
                    exit_code: i32,
                }
                for item in &self.items {
                    let r = ItemRecord { kind: "item", command: &self.command, item };
                    writeln!(s, "{}", serde_json::to_string(&r).expect("serializable")).expect("writing to a string");
                }
                let summary = Summary {
                    kind: "summary",
                    command: &self.command,
                    inputs: &self.inputs,
                    total: self.items.len(),
                    failed: self.failed(),
                    exit_code: self.exit_code(),
                };
                writeln!(s, "{}", serde_json::to_string(&summary).expect("serializable")).expect("writing to a string");
            }
        }
        s
    }
}

/// Non-blank, non-comment lines of a file, labelled by line number.
fn read_lines(path: &Path) -> Result<Vec<(String, String)>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (format!("line {}", i + 1), l.trim().to_string()))
        .collect())
}

fn per_line(
    command: &str,
    path: &Path,
    f: impl Fn(&str) -> Result<String, String> + Sync,
) -> Result<RunReport, UsageError> {
    let lines = read_lines(path)?;
    let items = lines.into_par_iter().map(|(label, input)| {
        let r = f(&input);
        Item::from_result(label, input, r)
    });
    Ok(RunReport { command: command.into(), inputs: vec![path.display().to_string()], items: items.collect() })
}

/// Translates each formula in `input`; with `out`, writes the translations there.
pub fn cmd_translate(input: &Path, policy: AtomPolicy, out: Option<&Path>) -> Result<RunReport, UsageError> {
    let report = per_line("translate", input, |line| {
        let f = parse(line).map_err(|e| e.to_string())?;
        Ok(print(&negative_translate(&f, policy)))
    })?;
    if let Some(out) = out {
        write_file(out, &report.outputs())?;
    }
    Ok(report)
}

/// Lists the syntactic classes of each formula in `input`.
pub fn cmd_classify(input: &Path) -> Result<RunReport, UsageError> {
    per_line("classify", input, |line| {
        let f = parse(line).map_err(|e| e.to_string())?;
        Ok(classify(&f).iter().map(|c| c.name()).collect::<Vec<_>>().join(" "))
    })
}

/// Instantiates one schema; with `translate`, also applies the negative translation.
pub fn cmd_instantiate(catalog: &Catalog, schema: &str, bindings: &[String], translate: Option<AtomPolicy>) -> RunReport {
    let r = Bindings::parse(bindings).and_then(|b| catalog.instantiate(schema, &b)).map_err(|e| e.to_string()).map(|f| {
        print(&match translate {
            Some(p) => negative_translate(&f, p),
            None => f,
        })
    });
    let input = if bindings.is_empty() { schema.to_string() } else { format!("{schema} [{}]", bindings.join("; ")) };
    RunReport { command: "instantiate".into(), inputs: vec![input.clone()], items: vec![Item::from_result(schema.into(), input, r)] }
}

fn script_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>, UsageError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|q| q.extension().is_some_and(|e| e == "proof"))
                .collect();
            inner.sort();
            out.extend(inner);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn judge(kernel: &Kernel, text: &str, theory: Option<&str>) -> Result<String, String> {
    let script = Script::parse(text).map_err(|e| e.to_string())?;
    let j = match theory {
        Some(t) => kernel.check_in(&script, t),
        None => kernel.check(&script),
    }
    .map_err(|e| e.to_string())?;
    match &j.verdict {
        Verdict::Checked => Ok(j.to_string()),
        Verdict::Failed { .. } => Err(j.to_string()),
    }
}

/// Checks scripts (files, or directories of `*.proof` files), optionally
/// in the theory `theory` instead of each script's own.
pub fn cmd_check(kernel: &Kernel, paths: &[PathBuf], theory: Option<&str>) -> Result<RunReport, UsageError> {
    if let Some(t) = theory {
        kernel.catalog().theory(t).map_err(|e| usage(format!("--theory: {e}")))?;
    }
    let files = script_paths(paths)?;
    let items = files
        .par_iter()
        .map(|p| {
            let r = std::fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|t| judge(kernel, &t, theory));
            Item::from_result(p.display().to_string(), p.display().to_string(), r)
        })
        .collect();
    Ok(RunReport { command: "check".into(), inputs: paths.iter().map(|p| p.display().to_string()).collect(), items })
}

/// Checks a corpus directory, each script in its declared theory.
pub fn cmd_corpus(kernel: &Kernel, dir: &Path) -> Result<RunReport, UsageError> {
    let report = check_corpus(kernel, dir).map_err(|e| usage(format!("cannot read {}: {e}", dir.display())))?;
    let items = report
        .entries
        .iter()
        .map(|e| {
            let r = e.outcome.clone().map(|()| format!("checked in {}", e.theory.as_deref().unwrap_or("?")));
            Item::from_result(e.name(), e.path.display().to_string(), r)
        })
        .collect();
    Ok(RunReport { command: "corpus".into(), inputs: vec![dir.display().to_string()], items })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Rho,
    Gamma,
    Barhit,
}

/// Options for [`cmd_eval`].
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub bound: u64,
    pub construction: Option<Construction>,
    /// Environment variable supplying the α of ρ.
    pub alpha: String,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { bound: 100, construction: None, alpha: "alpha".into() }
    }
}

/// Evaluates each line of `input` against the environment file `env`.
/// Plain mode reads formulas; `rho` and `gamma` read codes; `barhit`
/// reads names of environment sequences to search along.
pub fn cmd_eval(input: &Path, env: &Path, opts: &EvalOptions) -> Result<RunReport, UsageError> {
    let text = std::fs::read_to_string(env).map_err(|e| usage(format!("cannot read {}: {e}", env.display())))?;
    let env_map: Env = parse_env(&text).map_err(|e| usage(format!("{}: {e}", env.display())))?;
    let alpha = || {
        env_map
            .get(opts.alpha.trim_start_matches('$'))
            .cloned()
            .ok_or_else(|| usage(format!("the environment does not define ${}", opts.alpha.trim_start_matches('$'))))
    };
    let code = |line: &str| line.parse::<BigUint>().map_err(|_| format!("`{line}` is not a natural number"));
    let mut report = match opts.construction {
        None => {
            let profile = Profile::with_bound(opts.bound);
            per_line("eval", input, |line| {
                let f = parse(line).map_err(|e| e.to_string())?;
                eval_bounded(&f, &env_map, &profile).map(|v| v.to_string()).map_err(|e| e.to_string())
            })?
        }
        Some(Construction::Rho) => {
            let rho = make_rho(alpha()?);
            per_line("eval", input, |line| Ok(rho.at(&code(line)?).to_string()))?
        }
        Some(Construction::Gamma) => {
            let gamma = GammaConstruction { rho: make_rho(alpha()?) };
            per_line("eval", input, |line| Ok(gamma.at(&code(line)?).to_string()))?
        }
        Some(Construction::Barhit) => {
            let rho = make_rho(alpha()?);
            per_line("eval", input, |line| {
                let name = line.trim_start_matches('$');
                let zeta = env_map.get(name).ok_or_else(|| format!("the environment does not define ${name}"))?;
                Ok(bar_hit(&rho, zeta, opts.bound).map_or_else(|| "none".to_string(), |n| n.to_string()))
            })?
        }
    };
    report.inputs.push(env.display().to_string());
    Ok(report)
}

fn write_file(path: &Path, text: &str) -> Result<(), UsageError> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Parser, Debug)]
#[command(name = "negint", version, about = "Negative translation, schema instantiation, proof checking and bounded evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write item outputs, one per line, to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Negative translation of each formula in a file.
    Translate {
        input: PathBuf,
        #[arg(long, default_value = "identity")]
        policy: AtomPolicy,
        #[command(flatten)]
        common: Common,
    },
    /// Syntactic classes of each formula in a file.
    Classify {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Instantiates a schema with bindings such as `?A(x) := x = 0`.
    Instantiate {
        schema: String,
        #[arg(long = "bind", short = 'b')]
        bindings: Vec<String>,
        /// Apply the negative translation with this policy.
        #[arg(long)]
        policy: Option<AtomPolicy>,
        #[command(flatten)]
        common: Common,
    },
    /// Checks proof scripts or directories of them.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Check in this theory instead of each script's own.
        #[arg(long)]
        theory: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Bounded evaluation of formulas, or of the rho, gamma and bar constructions.
    Eval {
        input: PathBuf,
        #[arg(long)]
        env: PathBuf,
        #[arg(long, default_value_t = 100)]
        bound: u64,
        #[arg(long, value_enum)]
        construction: Option<Construction>,
        /// Environment sequence used as the alpha of rho.
        #[arg(long, default_value = "alpha")]
        alpha: String,
        #[command(flatten)]
        common: Common,
    },
    /// Checks every script in a corpus directory (default: the shipped corpus).
    Corpus {
        dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// The directory of shipped proof scripts.
pub fn shipped_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn dispatch(cmd: Command) -> Result<(RunReport, Common), UsageError> {
    let kernel = || -> Result<Kernel, UsageError> {
        let cat = Catalog::load().map_err(|e| usage(e.to_string()))?;
        Ok(Kernel::with_catalog(Arc::new(cat)))
    };
    Ok(match cmd {
        Command::Translate { input, policy, common } => (cmd_translate(&input, policy, None)?, common),
        Command::Classify { input, common } => (cmd_classify(&input)?, common),
        Command::Instantiate { schema, bindings, policy, common } => {
            let cat = Catalog::load().map_err(|e| usage(e.to_string()))?;
            (cmd_instantiate(&cat, &schema, &bindings, policy), common)
        }
        Command::Check { paths, theory, common } => (cmd_check(&kernel()?, &paths, theory.as_deref())?, common),
        Command::Eval { input, env, bound, construction, alpha, common } => {
            (cmd_eval(&input, &env, &EvalOptions { bound, construction, alpha })?, common)
        }
        Command::Corpus { dir, common } => (cmd_corpus(&kernel()?, &dir.unwrap_or_else(shipped_corpus))?, common),
    })
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let help = !e.use_stderr();
            let _ = if help { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return if help { 0 } else { 2 };
        }
    };
    match dispatch(cli.command) {
        Err(e) => {
            let _ = writeln!(stderr, "negint: {e}");
            2
        }
        Ok((report, common)) => {
            if let Some(out) = &common.out {
                if let Err(e) = write_file(out, &report.outputs()) {
                    let _ = writeln!(stderr, "negint: {e}");
                    return 2;
                }
            }
            let _ = write!(stdout, "{}", report.render(common.format));
            report.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("negint").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn translate_itemizes_bad_lines() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.txt");
        std::fs::write(&input, "# two formulas\nE x. x = 0\nA x. (\n\nx = 0 \\/ x = 1\n").unwrap();
        let out = dir.path().join("out.txt");
        let r = cmd_translate(&input, AtomPolicy::Identity, Some(&out)).unwrap();
        assert_eq!(r.items.len(), 3);
        assert_eq!((r.failed(), r.exit_code()), (1, 1));
        assert_eq!(r.items[0].output.as_deref(), Some("~A x. ~x = 0"));
        assert_eq!(r.items[1].label, "line 3");
        let written = std::fs::read_to_string(&out).unwrap();
        assert_eq!(written.lines().count(), 3);
        assert!(written.lines().nth(1).unwrap().starts_with("# line 3"));
    }

    #[test]
    fn empty_input_is_success() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.txt");
        std::fs::write(&input, "").unwrap();
        let out = dir.path().join("out.txt");
        let r = cmd_translate(&input, AtomPolicy::Identity, Some(&out)).unwrap();
        assert_eq!((r.items.len(), r.exit_code()), (0, 0));
        assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["corpus"]).0, 0);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["check", "corpus", "--theory", "NOPE"]).0, 2);
        assert_eq!(run_args(&["translate", "/nonexistent/file"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
        let (code, out, _) = run_args(&["instantiate", "MP1", "--policy", "identity"]);
        assert_eq!(code, 0);
        assert!(out.contains("A $a. (~A x. ~$a(x) = 0) -> ~A x. ~$a(x) = 0"), "{out}");
        assert_eq!(run_args(&["instantiate", "NOPE"]).0, 1);
    }

    #[test]
    fn records_are_deterministic() {
        let (c1, a, _) = run_args(&["corpus", "--format", "records"]);
        let (c2, b, _) = run_args(&["corpus", "--format", "records"]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b);
        let last: serde_json::Value = serde_json::from_str(a.lines().last().unwrap()).unwrap();
        assert_eq!(last["kind"], "summary");
        assert_eq!(last["failed"], 0);
    }

    #[test]
    fn eval_constructions() {
        let dir = tempfile::tempdir().unwrap();
        let env = dir.path().join("env.txt");
        std::fs::write(&env, "$alpha = table {} default 0\n$zeta = table {} default 1\n").unwrap();
        let codes = dir.path().join("codes.txt");
        std::fs::write(&codes, "4\n2\nx\n").unwrap();
        let opts = EvalOptions { construction: Some(Construction::Rho), ..EvalOptions::default() };
        let r = cmd_eval(&codes, &env, &opts).unwrap();
        let outs: Vec<_> = r.items.iter().map(|i| i.output.clone()).collect();
        assert_eq!(outs, [Some("0".into()), Some("1".into()), None]);
        let names = dir.path().join("names.txt");
        std::fs::write(&names, "zeta\nalpha\nmissing\n").unwrap();
        let opts = EvalOptions { construction: Some(Construction::Barhit), bound: 10, ..EvalOptions::default() };
        let r = cmd_eval(&names, &env, &opts).unwrap();
        let outs: Vec<_> = r.items.iter().map(|i| i.output.clone()).collect();
        assert_eq!(outs, [Some("1".into()), Some("none".into()), None]);
        let gamma = EvalOptions { construction: Some(Construction::Gamma), ..EvalOptions::default() };
        std::fs::write(&codes, "6\n").unwrap();
        assert_eq!(cmd_eval(&codes, &env, &gamma).unwrap().items[0].output.as_deref(), Some("1"));
    }

    #[test]
    fn eval_formulas() {
        let dir = tempfile::tempdir().unwrap();
        let env = dir.path().join("env.txt");
        std::fs::write(&env, "$a = table {} default 1\n").unwrap();
        let f = dir.path().join("f.txt");
        std::fs::write(&f, "E x. $a(x) = 0\nA x <= 3. x + 0 = x\n$b(0) = 0\n").unwrap();
        let r = cmd_eval(&f, &env, &EvalOptions::default()).unwrap();
        assert_eq!(r.items[0].output.as_deref(), Some("unknown (N=100, 3 samples)"));
        assert_eq!(r.items[1].output.as_deref(), Some("true (N=100, 3 samples)"));
        assert_eq!(r.items[2].status, Status::Failed);
        assert_eq!(r.exit_code(), 1);
        std::fs::write(&env, "nonsense\n").unwrap();
        assert!(cmd_eval(&f, &env, &EvalOptions::default()).is_err());
    }
}
