//! An untrusted proof builder. Proofs are trees with hypothesis leaves;
//! [`discharge`] applies the deduction theorem and [`compile`] emits a
//! linear script for the kernel to check.

use std::collections::HashMap;
use std::rc::Rc;

use crate::catalog::{Bindings, Catalog};
use crate::syntax::{alpha_eq, free_vars, normalize_for_kernel, print, substitute, Arg, Formula, Quantifier, SubstMode, Var};

use super::{Justification, Script, Step};

#[derive(Debug)]
pub enum Rule {
    Hyp,
    Axiom,
    Logical(&'static str, Option<Arg>),
    Schema(String, Vec<String>),
    Lemma(String, Vec<String>),
    Mp(Pf, Pf),
    Gen(Pf, Var),
    CondGen(Pf, Var),
}

#[derive(Debug)]
pub struct Node {
    pub concl: Formula,
    pub rule: Rule,
}

pub type Pf = Rc<Node>;

pub type BuildResult = Result<Pf, String>;

fn node(concl: Formula, rule: Rule) -> Pf {
    Rc::new(Node { concl, rule })
}

pub fn hyp(f: &Formula) -> Pf {
    node(normalize_for_kernel(f), Rule::Hyp)
}

pub fn axiom(f: &Formula) -> Pf {
    node(normalize_for_kernel(f), Rule::Axiom)
}

pub fn logical(id: &'static str, f: Formula) -> Pf {
    node(normalize_for_kernel(&f), Rule::Logical(id, None))
}

/// A schema instance; the conclusion is computed by the catalog.
pub fn schema(cat: &Catalog, name: &str, bindings: &[&str]) -> BuildResult {
    let b = Bindings::parse(bindings).map_err(|e| e.to_string())?;
    let f = cat.instantiate(name, &b).map_err(|e| e.to_string())?;
    Ok(node(normalize_for_kernel(&f), Rule::Schema(name.to_string(), bindings.iter().map(|s| s.to_string()).collect())))
}

/// A lemma citation with its conclusion as stated by the caller.
pub fn lemma(name: &str, bindings: Vec<String>, concl: Formula) -> Pf {
    node(normalize_for_kernel(&concl), Rule::Lemma(name.to_string(), bindings))
}

/// `?A := f` in binding syntax.
pub fn bind(meta: &str, f: &Formula) -> String {
    format!("?{meta} := {}", print(f))
}

pub fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

pub fn not(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

pub fn mp(minor: &Pf, major: &Pf) -> BuildResult {
    match &major.concl {
        Formula::Imp(a, b) if alpha_eq(a, &minor.concl) => Ok(node((**b).clone(), Rule::Mp(minor.clone(), major.clone()))),
        other => Err(format!("cannot apply `{}` to `{}`", print(other), print(&minor.concl))),
    }
}

pub fn gen(p: &Pf, v: &Var) -> Pf {
    node(Formula::forall(v.clone(), p.concl.clone()), Rule::Gen(p.clone(), v.clone()))
}

/// From `C -> A` infer `C -> A v. A`.
pub fn cond_gen(p: &Pf, v: &Var) -> BuildResult {
    match &p.concl {
        Formula::Imp(c, a) if !free_vars(c).contains(v) => Ok(node(
            Formula::imp((**c).clone(), Formula::forall(v.clone(), (**a).clone())),
            Rule::CondGen(p.clone(), v.clone()),
        )),
        other => Err(format!("cannot generalize `{}` over {v}", print(other))),
    }
}

/// `(A v. B) -> B[v := t]`.
pub fn all_elim_ax(all: &Formula, t: &Arg) -> BuildResult {
    match all {
        Formula::Quant(Quantifier::Forall, v, body) => {
            let inst = substitute(body, v, t, SubstMode::Rename).map_err(|e| e.to_string())?;
            Ok(node(imp(all, &inst), Rule::Logical("all-elim", Some(t.clone()))))
        }
        other => Err(format!("`{}` is not universal", print(other))),
    }
}

pub fn all_elim(p: &Pf, t: &Arg) -> BuildResult {
    mp(p, &all_elim_ax(&p.concl, t)?)
}

pub fn refl(t: &crate::syntax::Term) -> Pf {
    logical("refl", Formula::eq(t.clone(), t.clone()))
}

/// `h -> h`.
pub fn imp_refl(h: &Formula) -> BuildResult {
    let hh = imp(h, h);
    let k1 = logical("K", imp(h, &hh));
    let k2 = logical("K", imp(h, &imp(&hh, h)));
    let s = logical("S", imp(&imp(h, &hh), &imp(&imp(h, &imp(&hh, h)), &hh)));
    mp(&k2, &mp(&k1, &s)?)
}

/// From `P` infer `h -> P`.
pub fn k_lift(p: &Pf, h: &Formula) -> BuildResult {
    mp(p, &logical("K", imp(&p.concl, &imp(h, &p.concl))))
}

pub fn and_intro(p: &Pf, q: &Pf) -> BuildResult {
    let both = Formula::and(p.concl.clone(), q.concl.clone());
    let ax = logical("and-intro", imp(&p.concl, &imp(&q.concl, &both)));
    mp(q, &mp(p, &ax)?)
}

pub fn and_l(p: &Pf) -> BuildResult {
    match &p.concl {
        Formula::And(a, _) => mp(p, &logical("and-l", imp(&p.concl, a))),
        other => Err(format!("`{}` is not a conjunction", print(other))),
    }
}

pub fn and_r(p: &Pf) -> BuildResult {
    match &p.concl {
        Formula::And(_, b) => mp(p, &logical("and-r", imp(&p.concl, b))),
        other => Err(format!("`{}` is not a conjunction", print(other))),
    }
}

pub fn or_l(p: &Pf, right: &Formula) -> BuildResult {
    let f = Formula::or(p.concl.clone(), normalize_for_kernel(right));
    mp(p, &logical("or-l", imp(&p.concl, &f)))
}

pub fn or_r(p: &Pf, left: &Formula) -> BuildResult {
    let f = Formula::or(normalize_for_kernel(left), p.concl.clone());
    mp(p, &logical("or-r", imp(&p.concl, &f)))
}

/// From `A \/ B`, `A -> C` and `B -> C` infer `C`.
pub fn or_elim(d: &Pf, left: &Pf, right: &Pf) -> BuildResult {
    let (a, b) = match &d.concl {
        Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
        other => return Err(format!("`{}` is not a disjunction", print(other))),
    };
    let c = match &left.concl {
        Formula::Imp(_, c) => (**c).clone(),
        other => return Err(format!("`{}` is not an implication", print(other))),
    };
    let ax = logical("or-elim", imp(&imp(&a, &c), &imp(&imp(&b, &c), &imp(&d.concl, &c))));
    mp(d, &mp(right, &mp(left, &ax)?)?)
}

/// From `Y` and `~Y`, both possibly using hypothesis `h`, infer `~h`.
pub fn neg_intro(h: &Formula, py: &Pf, pny: &Pf) -> BuildResult {
    let h = normalize_for_kernel(h);
    let y = &py.concl;
    if !alpha_eq(&pny.concl, &not(y)) {
        return Err(format!("`{}` is not the negation of `{}`", print(&pny.concl), print(y)));
    }
    let dy = discharge(&h, py)?;
    let dny = discharge(&h, pny)?;
    let ax = logical("neg-intro", imp(&imp(&h, y), &imp(&imp(&h, &not(y)), &not(&h))));
    mp(&dny, &mp(&dy, &ax)?)
}

/// From `Y` and `~Y` infer `z`.
pub fn ex_falso(py: &Pf, pny: &Pf, z: &Formula) -> BuildResult {
    let z = normalize_for_kernel(z);
    let ax = logical("neg-elim", imp(&pny.concl, &imp(&py.concl, &z)));
    mp(py, &mp(pny, &ax)?)
}

/// From `P -> Q` infer `~~P -> ~~Q`.
pub fn dn_mono(pq: &Pf) -> BuildResult {
    let (p, q) = match &pq.concl {
        Formula::Imp(p, q) => ((**p).clone(), (**q).clone()),
        other => return Err(format!("`{}` is not an implication", print(other))),
    };
    let not_p = neg_intro(&p, &mp(&hyp(&p), pq)?, &hyp(&not(&q)))?;
    let nn_q = neg_intro(&not(&q), &not_p, &hyp(&not(&not(&p))))?;
    discharge(&not(&not(&p)), &nn_q)
}

fn uses(p: &Pf, h: &Formula, memo: &mut HashMap<*const Node, bool>) -> bool {
    let key = Rc::as_ptr(p);
    if let Some(&b) = memo.get(&key) {
        return b;
    }
    let b = match &p.rule {
        Rule::Hyp => alpha_eq(&p.concl, h),
        Rule::Mp(a, b) => uses(a, h, memo) || uses(b, h, memo),
        Rule::Gen(q, _) | Rule::CondGen(q, _) => uses(q, h, memo),
        _ => false,
    };
    memo.insert(key, b);
    b
}

/// The deduction theorem: from a proof of `B` using hypothesis `h`, a proof of `h -> B`.
pub fn discharge(h: &Formula, p: &Pf) -> BuildResult {
    let h = normalize_for_kernel(h);
    let mut used = HashMap::new();
    let mut done = HashMap::new();
    discharge_rec(&h, p, &mut used, &mut done)
}

fn discharge_rec(
    h: &Formula,
    p: &Pf,
    used: &mut HashMap<*const Node, bool>,
    done: &mut HashMap<*const Node, Pf>,
) -> BuildResult {
    if let Some(d) = done.get(&Rc::as_ptr(p)) {
        return Ok(d.clone());
    }
    let out = if !uses(p, h, used) {
        k_lift(p, h)?
    } else {
        match &p.rule {
            Rule::Hyp => imp_refl(h)?,
            // `b` already proves `h -> B`.
            Rule::Mp(a, b) if matches!(a.rule, Rule::Hyp) && alpha_eq(&a.concl, h) && !uses(b, h, used) => b.clone(),
            Rule::Mp(a, b) => {
                let da = discharge_rec(h, a, used, done)?;
                let db = discharge_rec(h, b, used, done)?;
                let (x, y) = (&a.concl, &p.concl);
                let s = logical("S", imp(&imp(h, x), &imp(&imp(h, &imp(x, y)), &imp(h, y))));
                mp(&db, &mp(&da, &s)?)?
            }
            Rule::Gen(q, v) => {
                if free_vars(h).contains(v) {
                    return Err(format!("eigenvariable {v} is free in the hypothesis `{}`", print(h)));
                }
                cond_gen(&discharge_rec(h, q, used, done)?, v)?
            }
            Rule::CondGen(..) => return Err("conditional generalization under a hypothesis is not supported".into()),
            _ => unreachable!("leaves do not use hypotheses"),
        }
    };
    done.insert(Rc::as_ptr(p), out.clone());
    Ok(out)
}

/// Emits the proof as a script whose goal is `goal`.
pub fn compile(p: &Pf, theory: &str, goal: &Formula) -> Result<Script, String> {
    if !alpha_eq(&p.concl, &normalize_for_kernel(goal)) {
        return Err(format!("the proof ends in `{}`, not the goal", print(&p.concl)));
    }
    let mut c = Compiler { steps: Vec::new(), index: HashMap::new() };
    c.emit(p, true)?;
    Ok(Script { theory: theory.to_string(), goal: goal.clone(), steps: c.steps })
}

struct Compiler {
    steps: Vec<Step>,
    index: HashMap<Formula, usize>,
}

impl Compiler {
    fn emit(&mut self, p: &Pf, root: bool) -> Result<usize, String> {
        if !root {
            if let Some(&i) = self.index.get(&p.concl) {
                return Ok(i);
            }
        }
        let just = match &p.rule {
            Rule::Hyp => return Err(format!("undischarged hypothesis `{}`", print(&p.concl))),
            Rule::Axiom => Justification::Axiom,
            Rule::Logical(id, arg) => Justification::Logical { id: id.to_string(), arg: arg.clone() },
            Rule::Schema(n, b) => Justification::Schema { name: n.clone(), bindings: b.clone() },
            Rule::Lemma(n, b) => Justification::Lemma { name: n.clone(), bindings: b.clone() },
            Rule::Mp(a, b) => {
                let (i, j) = (self.emit(a, false)?, self.emit(b, false)?);
                Justification::Mp(i, j)
            }
            Rule::Gen(q, v) | Rule::CondGen(q, v) => Justification::Gen(self.emit(q, false)?, v.clone()),
        };
        let index = self.steps.len() + 1;
        self.steps.push(Step { index, formula: p.concl.clone(), just, line: 0 });
        self.index.entry(p.concl.clone()).or_insert(index);
        Ok(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Kernel;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn checks(p: &Pf, theory: &str) {
        let script = compile(p, theory, &p.concl).unwrap();
        let j = Kernel::standard().check(&script).unwrap();
        assert!(j.is_checked(), "{j}\n{script}");
    }

    #[test]
    fn identity_and_deduction() {
        checks(&imp_refl(&f("?A")).unwrap(), "PL");
        // A & B -> B & A
        let h = f("?A & ?B");
        let p = and_intro(&and_r(&hyp(&h)).unwrap(), &and_l(&hyp(&h)).unwrap()).unwrap();
        checks(&discharge(&h, &p).unwrap(), "PL");
    }

    #[test]
    fn negation_rules() {
        let a = f("?A");
        let nn = discharge(&a, &neg_intro(&not(&a), &hyp(&a), &hyp(&not(&a))).unwrap()).unwrap();
        assert_eq!(print(&nn.concl), "?A -> ~~?A");
        checks(&nn, "PL");
        let mono = dn_mono(&logical("and-l", f("?A & ?B -> ?A"))).unwrap();
        assert_eq!(print(&mono.concl), "~~(?A & ?B) -> ~~?A");
        checks(&mono, "PL");
    }

    #[test]
    fn generalization_under_hypothesis() {
        // (A x. ?A(x) & ?B(x)) -> A x. ?A(x)
        let h = f("A x. ?A(x) & ?B(x)");
        let x = Arg::Term(crate::syntax::Term::var("x"));
        let body = and_l(&all_elim(&hyp(&h), &x).unwrap()).unwrap();
        let p = discharge(&h, &gen(&body, &Var::num("x"))).unwrap();
        checks(&p, "PL");
        // The eigenvariable may not be free in the hypothesis.
        let h2 = f("?A(x)");
        assert!(discharge(&h2, &gen(&hyp(&h2), &Var::num("x"))).is_err());
    }

    #[test]
    fn undischarged_hypotheses_are_rejected() {
        let p = hyp(&f("?A"));
        assert!(compile(&p, "PL", &f("?A")).is_err());
        assert!(compile(&imp_refl(&f("?A")).unwrap(), "PL", &f("?B -> ?B")).is_err());
    }
}
