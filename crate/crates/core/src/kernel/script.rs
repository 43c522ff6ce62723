//! The proof script format.
//!
//! ```text
//! script  := line*
//! line    := "#" comment | "theory" EXPR | "goal" FORMULA | step
//! step    := "step" INDEX FORMULA "BY" just
//! just    := "axiom"
//!          | "schema" NAME ["[" bindings "]"]
//!          | "logical" ID ["[" arg "]"]
//!          | "lemma" NAME ["[" bindings "]"]
//!          | "mp" INDEX INDEX
//!          | "gen" INDEX VAR
//!          | "exrule" INDEX VAR
//! ```
//!
//! `mp i j` takes `A` from step `i` and `A -> B` from step `j`.

use std::fmt;

use thiserror::Error;

use crate::syntax::{parse, parse_arg, print, print_arg, Arg, Formula, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ScriptError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Justification {
    Axiom,
    Schema { name: String, bindings: Vec<String> },
    Logical { id: String, arg: Option<Arg> },
    Lemma { name: String, bindings: Vec<String> },
    Mp(usize, usize),
    Gen(usize, Var),
    ExRule(usize, Var),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub index: usize,
    pub formula: Formula,
    pub just: Justification,
    /// Source line, or 0 for generated steps.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub theory: String,
    pub goal: Formula,
    pub steps: Vec<Step>,
}

fn parse_var(s: &str) -> Option<Var> {
    let ok = |n: &str| !n.is_empty() && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    match s.strip_prefix('$') {
        Some(n) if ok(n) => Some(Var::seq(n)),
        None if ok(s) && s.starts_with(|c: char| c.is_ascii_alphabetic()) => Some(Var::num(s)),
        _ => None,
    }
}

fn split_bindings(rest: &str) -> Result<(String, Vec<String>), String> {
    match rest.split_once(" [") {
        None => Ok((rest.trim().to_string(), Vec::new())),
        Some((name, b)) => {
            let inner = b.trim_end().strip_suffix(']').ok_or("unclosed `[`")?;
            let items = inner.split(';').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            Ok((name.trim().to_string(), items))
        }
    }
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let text = text.trim();
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let index = |s: &str| s.parse::<usize>().map_err(|_| format!("bad step index `{s}`"));
    let words: Vec<&str> = rest.split_whitespace().collect();
    match head {
        "axiom" if rest.is_empty() => Ok(Justification::Axiom),
        "schema" | "lemma" => {
            let (name, bindings) = split_bindings(rest)?;
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(format!("bad {head} name `{name}`"));
            }
            Ok(if head == "schema" {
                Justification::Schema { name, bindings }
            } else {
                Justification::Lemma { name, bindings }
            })
        }
        "logical" => {
            let (id, mut items) = split_bindings(rest)?;
            let arg = match items.len() {
                0 => None,
                1 => Some(parse_arg(&items.remove(0)).map_err(|e| e.to_string())?),
                _ => return Err("a logical axiom takes at most one instantiation".into()),
            };
            Ok(Justification::Logical { id, arg })
        }
        "mp" if words.len() == 2 => Ok(Justification::Mp(index(words[0])?, index(words[1])?)),
        "gen" | "exrule" if words.len() == 2 => {
            let i = index(words[0])?;
            let v = parse_var(words[1]).ok_or_else(|| format!("bad variable `{}`", words[1]))?;
            Ok(if head == "gen" { Justification::Gen(i, v) } else { Justification::ExRule(i, v) })
        }
        _ => Err(format!("unknown justification `{text}`")),
    }
}

impl Script {
    pub fn parse(text: &str) -> Result<Script, ScriptError> {
        let mut theory = None;
        let mut goal = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| ScriptError { line, msg };
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            match kw {
                "theory" => {
                    if theory.replace(rest.trim().to_string()).is_some() {
                        return Err(err("duplicate `theory` header".into()));
                    }
                }
                "goal" => {
                    let f = parse(rest).map_err(|e| err(e.to_string()))?;
                    if goal.replace(f).is_some() {
                        return Err(err("duplicate `goal` header".into()));
                    }
                }
                "step" => {
                    let (idx, body) = rest.trim().split_once(char::is_whitespace).ok_or_else(|| err("empty step".into()))?;
                    let index = idx.parse::<usize>().map_err(|_| err(format!("bad step index `{idx}`")))?;
                    let (formula, just) = body.split_once(" BY ").ok_or_else(|| err("missing ` BY `".into()))?;
                    let formula = parse(formula).map_err(|e| err(e.to_string()))?;
                    let just = parse_justification(just).map_err(err)?;
                    steps.push(Step { index, formula, just, line });
                }
                _ => return Err(err(format!("unknown directive `{kw}`"))),
            }
        }
        let theory = theory.ok_or(ScriptError { line: 0, msg: "missing `theory` header".into() })?;
        let goal = goal.ok_or(ScriptError { line: 0, msg: "missing `goal` header".into() })?;
        Ok(Script { theory, goal, steps })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |b: &[String]| if b.is_empty() { String::new() } else { format!(" [{}]", b.join("; ")) };
        match self {
            Justification::Axiom => write!(f, "axiom"),
            Justification::Schema { name, bindings } => write!(f, "schema {name}{}", list(bindings)),
            Justification::Lemma { name, bindings } => write!(f, "lemma {name}{}", list(bindings)),
            Justification::Logical { id, arg: None } => write!(f, "logical {id}"),
            Justification::Logical { id, arg: Some(a) } => write!(f, "logical {id} [{}]", print_arg(a)),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Gen(i, v) => write!(f, "gen {i} {v}"),
            Justification::ExRule(i, v) => write!(f, "exrule {i} {v}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theory {}", self.theory)?;
        writeln!(f, "goal {}", print(&self.goal))?;
        for s in &self.steps {
            writeln!(f, "step {} {} BY {}", s.index, print(&s.formula), s.just)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# identity\ntheory PL\ngoal A $a. $a(0) = 0 -> $a(0) = 0\nstep 1 $a(0) = 0 -> $a(0) = 0 BY lemma imp-refl [?A := $a(0) = 0]\nstep 2 A $a. $a(0) = 0 -> $a(0) = 0 BY gen 1 $a\n";

    #[test]
    fn parse_and_print_roundtrip() {
        let s = Script::parse(SAMPLE).unwrap();
        assert_eq!(s.theory, "PL");
        assert_eq!(s.steps.len(), 2);
        assert_eq!(s.steps[1].just, Justification::Gen(1, Var::seq("a")));
        let again = Script::parse(&s.to_text()).unwrap();
        let strip = |sc: &Script| sc.steps.iter().map(|st| (st.index, st.formula.clone(), st.just.clone())).collect::<Vec<_>>();
        assert_eq!((again.theory.clone(), again.goal.clone()), (s.theory.clone(), s.goal.clone()));
        assert_eq!(strip(&again), strip(&s));
    }

    #[test]
    fn justification_forms() {
        for j in ["axiom", "schema g(AC01) [?A(x, $a) := $a(x) = 0]", "schema g[strict](MP1)", "logical all-elim [\\y. y]", "logical K", "mp 1 2", "gen 3 x", "exrule 4 $b", "lemma eq-stab"] {
            let parsed = parse_justification(j).unwrap_or_else(|e| panic!("{j}: {e}"));
            assert_eq!(parsed.to_string(), j);
        }
    }

    #[test]
    fn script_errors() {
        assert_eq!(Script::parse("goal 0 = 0").unwrap_err().line, 0);
        assert_eq!(Script::parse("theory PL\ngoal 0 = 0\nstep 1 0 = 0").unwrap_err().line, 3);
        assert_eq!(Script::parse("theory PL\ngoal 0 = 0\nstep 1 0 = 0 BY mp x 2").unwrap_err().line, 3);
        assert_eq!(Script::parse("theory PL\nproof").unwrap_err().line, 2);
        assert!(Script::parse("theory PL\ngoal 0 = 0\nstep 1 0 = 0 BY logical K [0; 1]").is_err());
    }
}
