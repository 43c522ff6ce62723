//! A Hilbert-style checker for two-sorted intuitionistic predicate logic
//! with equality, over the theories of the catalog.
//!
//! Step formulas are compared after [`normalize_for_kernel`] and up to
//! renaming of bound variables.

pub mod builder;
mod corpus;
mod lemmas;
mod postulates;
mod script;
mod stability;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::catalog::{apply_meta_bindings, Bindings, Catalog, CatalogError, SchemaBody, Theory};
use crate::syntax::{alpha_eq, alpha_eq_term, free_vars, lambda_reduce, normalize_for_kernel, parse, print, Formula, Quantifier};
use crate::translate::AtomPolicy;

pub use corpus::{check_corpus, CorpusEntry, CorpusReport};
pub use lemmas::{generate_lemmas, LEMMA_SOURCES};
pub use postulates::{Postulates, BUILTIN_POSTULATES};
pub use script::{Justification, Script, ScriptError, Step};
pub use stability::{stability_script, StabilityError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Checked,
    Failed { step: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Judgment {
    pub verdict: Verdict,
    pub theory: String,
    pub goal: Formula,
    pub steps: usize,
}

impl Judgment {
    pub fn is_checked(&self) -> bool {
        self.verdict == Verdict::Checked
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Checked => write!(f, "checked ({} steps in {})", self.steps, self.theory),
            Verdict::Failed { step, reason } => write!(f, "failed at step {step}: {reason}"),
        }
    }
}

/// The checker: a catalog, a postulate list and a lemma library.
pub struct Kernel {
    catalog: Arc<Catalog>,
    postulates: Postulates,
    lemmas: HashMap<String, Script>,
    memo: Mutex<HashMap<String, Result<(), String>>>,
}

impl Kernel {
    pub fn new(catalog: Arc<Catalog>, postulates: Postulates, lemmas: HashMap<String, Script>) -> Kernel {
        Kernel { catalog, postulates, lemmas, memo: Mutex::new(HashMap::new()) }
    }

    /// The built-in catalog, postulates and lemma library.
    pub fn standard() -> Kernel {
        Kernel::with_catalog(Arc::new(Catalog::standard().clone()))
    }

    pub fn with_catalog(catalog: Arc<Catalog>) -> Kernel {
        let lemmas = LEMMA_SOURCES
            .iter()
            .map(|(name, text)| (name.to_string(), Script::parse(text).expect("built-in lemma parses")))
            .collect();
        Kernel::new(catalog, Postulates::standard(), lemmas)
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn lemma(&self, name: &str) -> Option<&Script> {
        self.lemmas.get(name)
    }

    pub fn lemma_names(&self) -> Vec<&String> {
        let mut v: Vec<_> = self.lemmas.keys().collect();
        v.sort();
        v
    }

    /// Checks a script in its declared theory.
    pub fn check(&self, script: &Script) -> Result<Judgment, KernelError> {
        self.check_in(script, &script.theory)
    }

    /// Checks a script in the theory `expr` instead of the declared one.
    pub fn check_in(&self, script: &Script, expr: &str) -> Result<Judgment, KernelError> {
        let theory = self.catalog.theory(expr).map_err(|_| KernelError::UnknownTheory(expr.to_string()))?;
        let verdict = match self.run(script, &theory, &mut Vec::new()) {
            Ok(()) => Verdict::Checked,
            Err((step, reason)) => Verdict::Failed { step, reason },
        };
        Ok(Judgment { verdict, theory: theory.name, goal: script.goal.clone(), steps: script.steps.len() })
    }

    fn run(&self, script: &Script, theory: &Theory, stack: &mut Vec<String>) -> Result<(), (usize, String)> {
        let mut proved: Vec<(usize, Formula)> = Vec::with_capacity(script.steps.len());
        let lookup = |proved: &[(usize, Formula)], i: usize, at: usize| -> Result<Formula, (usize, String)> {
            proved
                .binary_search_by_key(&i, |(k, _)| *k)
                .map(|pos| proved[pos].1.clone())
                .map_err(|_| (at, format!("step {i} is not an earlier step")))
        };
        for step in &script.steps {
            let at = step.index;
            if proved.last().is_some_and(|(k, _)| *k >= at) {
                return Err((at, "step indices must increase".into()));
            }
            let n = normalize_for_kernel(&step.formula);
            let fail = |msg: String| (at, msg);
            match &step.just {
                Justification::Axiom => {
                    if !theory.axioms.iter().any(|a| alpha_eq(&normalize_for_kernel(a), &n)) {
                        return Err(fail(format!("not an axiom of {}", theory.name)));
                    }
                }
                Justification::Schema { name, bindings } => self.schema_step(name, bindings, &n, theory).map_err(fail)?,
                Justification::Logical { id, arg } => self.postulates.check(id, &n, arg.as_ref()).map_err(fail)?,
                Justification::Lemma { name, bindings } => {
                    self.lemma_step(name, bindings, &n, theory, stack).map_err(fail)?
                }
                Justification::Mp(i, j) => {
                    let (a, ab) = (lookup(&proved, *i, at)?, lookup(&proved, *j, at)?);
                    match &ab {
                        Formula::Imp(x, y) if alpha_eq(x, &a) => {
                            if !alpha_eq(y, &n) {
                                return Err(fail(format!("modus ponens yields `{}`", print(y))));
                            }
                        }
                        Formula::Imp(..) => return Err(fail(format!("step {i} is not the antecedent of step {j}"))),
                        _ => return Err(fail(format!("step {j} is not an implication"))),
                    }
                }
                Justification::Gen(i, v) => {
                    let prem = lookup(&proved, *i, at)?;
                    let plain = matches!(&n, Formula::Quant(Quantifier::Forall, w, body) if w == v && alpha_eq(body, &prem));
                    let conditional = match (&prem, &n) {
                        (Formula::Imp(c, a), Formula::Imp(c2, q)) => match q.as_ref() {
                            Formula::Quant(Quantifier::Forall, w, body) if w == v && alpha_eq(c, c2) && alpha_eq(a, body) => {
                                if free_vars(c).contains(v) {
                                    return Err(fail(format!("eigenvariable {v} occurs free in `{}`", print(c))));
                                }
                                true
                            }
                            _ => false,
                        },
                        _ => false,
                    };
                    if !plain && !conditional {
                        return Err(fail(format!("not a generalization of step {i} over {v}")));
                    }
                }
                Justification::ExRule(i, v) => {
                    let prem = lookup(&proved, *i, at)?;
                    let ok = match (&prem, &n) {
                        (Formula::Imp(a, c), Formula::Imp(e, c2)) => match e.as_ref() {
                            Formula::Quant(Quantifier::Exists, w, body) if w == v && alpha_eq(a, body) && alpha_eq(c, c2) => {
                                if free_vars(c).contains(v) {
                                    return Err(fail(format!("eigenvariable {v} occurs free in `{}`", print(c))));
                                }
                                true
                            }
                            _ => false,
                        },
                        _ => false,
                    };
                    if !ok {
                        return Err(fail(format!("not an existential elimination of step {i} over {v}")));
                    }
                }
            }
            proved.push((at, n));
        }
        match proved.last() {
            None => Err((0, "empty script".into())),
            Some((k, last)) if !alpha_eq(last, &normalize_for_kernel(&script.goal)) => {
                Err((*k, "the final step is not the goal".into()))
            }
            Some(_) => Ok(()),
        }
    }

    fn schema_step(&self, name: &str, bindings: &[String], n: &Formula, theory: &Theory) -> Result<(), String> {
        if !theory.has_schema(name) {
            return Err(format!("schema {name} is not part of {}", theory.name));
        }
        let schema = self.catalog.schema(name).map_err(|e| e.to_string())?;
        match &schema.body {
            SchemaBody::Opaque => Err(format!("{name} has no template and cannot be cited")),
            SchemaBody::Builtin => {
                if !bindings.is_empty() {
                    return Err(format!("{name} takes no bindings"));
                }
                let eq = match (schema.translation, n) {
                    (Some(AtomPolicy::Strict), Formula::Not(a)) => match a.as_ref() {
                        Formula::Not(b) => b.as_ref(),
                        _ => n,
                    },
                    _ => n,
                };
                match eq {
                    Formula::Eq(s, t) if alpha_eq_term(&lambda_reduce(s), &lambda_reduce(t)) => Ok(()),
                    _ => Err(format!("not an instance of {name}")),
                }
            }
            SchemaBody::Template(_) => {
                let b = Bindings::parse(bindings).map_err(|e| e.to_string())?;
                let inst = schema.instantiate(&b).map_err(|e| e.to_string())?;
                if alpha_eq(&normalize_for_kernel(&inst), n) {
                    Ok(())
                } else {
                    Err(format!("the instance of {name} is `{}`", print(&inst)))
                }
            }
        }
    }

    fn lemma_step(
        &self,
        name: &str,
        bindings: &[String],
        n: &Formula,
        theory: &Theory,
        stack: &mut Vec<String>,
    ) -> Result<(), String> {
        let lemma = self.lemmas.get(name).ok_or_else(|| format!("unknown lemma `{name}`"))?;
        let lt = self.catalog.theory(&lemma.theory).map_err(|e| e.to_string())?;
        if !theory.includes(&lt) {
            return Err(format!("lemma {name} needs {}", lemma.theory));
        }
        let inst = if bindings.is_empty() {
            lemma.clone()
        } else {
            instantiate_script(lemma, &Bindings::parse(bindings).map_err(|e| e.to_string())?)
                .map_err(|e| format!("lemma {name}: {e}"))?
        };
        if !alpha_eq(&normalize_for_kernel(&inst.goal), n) {
            return Err(format!("lemma {name} proves `{}`", print(&inst.goal)));
        }
        let key = format!("{name}[{}]", bindings.join("; "));
        if let Some(r) = self.memo.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return r.clone();
        }
        if stack.contains(&key) {
            return Err(format!("lemma {name} depends on itself"));
        }
        stack.push(key.clone());
        let result = self
            .run(&inst, &lt, stack)
            .map_err(|(step, why)| format!("lemma {name} fails at step {step}: {why}"));
        stack.pop();
        self.memo.lock().unwrap_or_else(|e| e.into_inner()).insert(key, result.clone());
        result
    }
}

fn instantiate_binding_text(text: &str, b: &Bindings) -> Result<String, CatalogError> {
    match text.split_once(":=") {
        Some((lhs, rhs)) if lhs.trim_start().starts_with('?') => {
            let body = parse(rhs.trim()).map_err(|e| CatalogError::BadBinding { text: text.into(), msg: e.to_string() })?;
            Ok(format!("{} := {}", lhs.trim(), print(&apply_meta_bindings(&body, b)?)))
        }
        _ => Ok(text.to_string()),
    }
}

/// Substitutes formula metavariables throughout a schematic script.
fn instantiate_script(s: &Script, b: &Bindings) -> Result<Script, CatalogError> {
    let rebind = |items: &[String]| items.iter().map(|t| instantiate_binding_text(t, b)).collect::<Result<Vec<_>, _>>();
    let steps = s
        .steps
        .iter()
        .map(|st| {
            let just = match &st.just {
                Justification::Schema { name, bindings } => {
                    Justification::Schema { name: name.clone(), bindings: rebind(bindings)? }
                }
                Justification::Lemma { name, bindings } => {
                    Justification::Lemma { name: name.clone(), bindings: rebind(bindings)? }
                }
                other => other.clone(),
            };
            Ok(Step { index: st.index, formula: apply_meta_bindings(&st.formula, b)?, just, line: st.line })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(Script { theory: s.theory.clone(), goal: apply_meta_bindings(&s.goal, b)?, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Judgment {
        Kernel::standard().check(&Script::parse(text).unwrap()).unwrap()
    }

    fn failed_at(j: &Judgment) -> Option<usize> {
        match &j.verdict {
            Verdict::Failed { step, .. } => Some(*step),
            Verdict::Checked => None,
        }
    }

    const MP1_G: &str = "theory PL\ngoal A $a. (~A x. ~$a(x) = 0) -> ~A x. ~$a(x) = 0\n\
        step 1 (~A x. ~$a(x) = 0) -> ~A x. ~$a(x) = 0 BY lemma imp-refl [?A := ~A x. ~$a(x) = 0]\n\
        step 2 A $a. (~A x. ~$a(x) = 0) -> ~A x. ~$a(x) = 0 BY gen 1 $a\n";

    #[test]
    fn two_step_mp1_translation() {
        let j = run(MP1_G);
        assert!(j.is_checked(), "{j}");
        assert_eq!(j.steps, 2);
    }

    #[test]
    fn modus_ponens_on_a_non_implication_fails() {
        let j = run("theory PL\ngoal 0 = 0\nstep 1 0 = 0 BY logical refl\nstep 2 1 = 1 BY logical refl\nstep 3 0 = 0 BY mp 1 2\n");
        assert_eq!(failed_at(&j), Some(3));
    }

    #[test]
    fn eigenvariable_violations_fail() {
        let j = run("theory PL\ngoal x = 0 -> A x. x = 0\n\
            step 1 x = 0 -> x = 0 BY lemma imp-refl [?A := x = 0]\n\
            step 2 x = 0 -> A x. x = 0 BY gen 1 x\n");
        assert_eq!(failed_at(&j), Some(2));
        let j = run("theory PL\ngoal (E x. x = 0) -> x = 0\n\
            step 1 x = 0 -> x = 0 BY lemma imp-refl [?A := x = 0]\n\
            step 2 (E x. x = 0) -> x = 0 BY exrule 1 x\n");
        assert_eq!(failed_at(&j), Some(2));
    }

    #[test]
    fn structural_failures() {
        let j = run("theory PL\ngoal 1 = 1\nstep 1 0 = 0 BY logical refl\n");
        assert_eq!(failed_at(&j), Some(1));
        let j = run("theory PL\ngoal 0 = 0\nstep 2 0 = 0 BY logical refl\nstep 1 0 = 0 BY logical refl\n");
        assert_eq!(failed_at(&j), Some(1));
        let j = run("theory PL\ngoal 0 = 0\nstep 1 0 = 0 BY mp 1 1\n");
        assert_eq!(failed_at(&j), Some(1));
        let j = run("theory PL\ngoal 0 = 0\n");
        assert_eq!(failed_at(&j), Some(0));
        assert!(Kernel::standard().check(&Script::parse("theory HA\ngoal 0 = 0\n").unwrap()).is_err());
    }

    #[test]
    fn axioms_and_schemas_are_theory_relative() {
        let ax = "goal A x. ~suc(x) = 0\nstep 1 A x. ~suc(x) = 0 BY axiom\n";
        assert!(run(&format!("theory IA1\n{ax}")).is_checked());
        assert_eq!(failed_at(&run(&format!("theory PL\n{ax}"))), Some(1));
        let rc = "goal (A x. E y. $r(pair(x, y)) = 0) -> E $a. A x. $r(pair(x, $a(x))) = 0\n\
            step 1 (A x. E y. $r(pair(x, y)) = 0) -> E $a. A x. $r(pair(x, $a(x))) = 0 BY schema qf-AC00 [?A(x, y) := $r(pair(x, y)) = 0]\n";
        assert!(run(&format!("theory IRA\n{rc}")).is_checked());
        assert_eq!(failed_at(&run(&format!("theory IA1\n{rc}"))), Some(1));
        let lam = "theory IA1\ngoal (\\y. suc(y))(x) = suc(x)\nstep 1 (\\y. suc(y))(x) = suc(x) BY schema LAMBDA\n";
        assert!(run(lam).is_checked());
        let vs = "theory I\ngoal 0 = 0\nstep 1 0 = 0 BY schema CC11\n";
        assert_eq!(failed_at(&run(vs)), Some(1));
    }

    #[test]
    fn weakening_and_determinism() {
        let k = Kernel::standard();
        let s = Script::parse(MP1_G).unwrap();
        for t in ["IA1", "IRA+MP1", "C", "MRA"] {
            assert!(k.check_in(&s, t).unwrap().is_checked(), "{t}");
        }
        assert_eq!(k.check(&s).unwrap(), k.check(&s).unwrap());
    }

    #[test]
    fn schematic_lemma_instances_are_rechecked() {
        // A bad instance of a schematic lemma is caught through capture checking.
        let j = run("theory PL\ngoal (~~A x. x = y) -> A x. ~~x = y\n\
            step 1 (~~A x. x = y) -> A x. ~~x = y BY lemma dn-all [?A(x) := x = y]\n");
        assert!(j.is_checked(), "{j}");
        let j = run("theory PL\ngoal (~~A x. y = y) -> A x. ~~y = y\n\
            step 1 (~~A x. x = x) -> A x. ~~x = x BY lemma dn-all [?A(y) := x = y]\n");
        assert_eq!(failed_at(&j), Some(1));
    }
}
