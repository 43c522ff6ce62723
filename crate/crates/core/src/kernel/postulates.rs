//! Logical postulates: propositional schemata given as templates, plus the
//! quantifier and equality axioms, which have dedicated checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::syntax::{
    alpha_eq, alpha_eq_term, free_vars, free_vars_term, parse, substitute, Arg, Formula, Functor, Quantifier,
    SubstMode, Term, Var,
};

pub const BUILTIN_POSTULATES: &str = include_str!("../../data/postulates.jsonl");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    Propositional,
    AllElim,
    ExIntro,
    Refl,
    EqRepl,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    id: String,
    kind: Kind,
    #[serde(default)]
    template: Option<String>,
    #[allow(dead_code)]
    #[serde(default)]
    doc: String,
}

#[derive(Debug, Clone)]
struct Postulate {
    kind: Kind,
    template: Option<Formula>,
}

/// The configured postulate list.
#[derive(Debug, Clone)]
pub struct Postulates {
    by_id: BTreeMap<String, Postulate>,
}

impl Postulates {
    pub fn standard() -> Postulates {
        Postulates::from_jsonl(BUILTIN_POSTULATES).expect("built-in postulates are valid")
    }

    pub fn from_jsonl(text: &str) -> Result<Postulates, String> {
        let mut by_id = BTreeMap::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let r: Record = serde_json::from_str(line).map_err(|e| format!("line {}: {e}", i + 1))?;
            let template = match (r.kind, r.template) {
                (Kind::Propositional, Some(t)) => Some(parse(&t).map_err(|e| format!("line {}: {e}", i + 1))?),
                (Kind::Propositional, None) => return Err(format!("line {}: missing template", i + 1)),
                (_, Some(_)) => return Err(format!("line {}: only propositional postulates take a template", i + 1)),
                (_, None) => None,
            };
            if by_id.insert(r.id.clone(), Postulate { kind: r.kind, template }).is_some() {
                return Err(format!("line {}: duplicate postulate `{}`", i + 1, r.id));
            }
        }
        Ok(Postulates { by_id })
    }

    pub fn ids(&self) -> impl Iterator<Item = &String> {
        self.by_id.keys()
    }

    /// Checks that `f` (in kernel normal form) is an instance of postulate `id`.
    pub fn check(&self, id: &str, f: &Formula, arg: Option<&Arg>) -> Result<(), String> {
        let p = self.by_id.get(id).ok_or_else(|| format!("unknown logical axiom `{id}`"))?;
        match p.kind {
            Kind::Propositional => {
                let t = p.template.as_ref().expect("validated");
                let mut map = BTreeMap::new();
                if arg.is_some() {
                    return Err(format!("`{id}` takes no instantiation"));
                }
                if match_template(t, f, &mut map) {
                    Ok(())
                } else {
                    Err(format!("not an instance of `{id}`"))
                }
            }
            Kind::AllElim => match f {
                Formula::Imp(a, inst) => match a.as_ref() {
                    Formula::Quant(Quantifier::Forall, v, body) => quantifier_instance(v, body, inst, arg),
                    _ => Err("all-elim needs `(A v. B) -> B[v := t]`".into()),
                },
                _ => Err("all-elim needs an implication".into()),
            },
            Kind::ExIntro => match f {
                Formula::Imp(inst, e) => match e.as_ref() {
                    Formula::Quant(Quantifier::Exists, v, body) => quantifier_instance(v, body, inst, arg),
                    _ => Err("ex-intro needs `B[v := t] -> E v. B`".into()),
                },
                _ => Err("ex-intro needs an implication".into()),
            },
            Kind::Refl => match f {
                Formula::Eq(s, t) if alpha_eq_term(s, t) => Ok(()),
                _ => Err("refl needs `t = t`".into()),
            },
            Kind::EqRepl => match f {
                Formula::Imp(e, rest) => match (e.as_ref(), rest.as_ref()) {
                    (Formula::Eq(s, t), Formula::Imp(p, q)) => {
                        let hidden: BTreeSet<Var> = free_vars_term(s).vars().chain(free_vars_term(t).vars()).collect();
                        if replaces(p, q, s, t, &hidden, &mut Vec::new()) {
                            Ok(())
                        } else {
                            Err("the consequent does not replace free occurrences of the left side by the right side".into())
                        }
                    }
                    _ => Err("eq-repl needs `s = t -> B -> B'`".into()),
                },
                _ => Err("eq-repl needs an implication".into()),
            },
        }
    }
}

/// Matches a template whose metavariables are nullary.
fn match_template(t: &Formula, f: &Formula, map: &mut BTreeMap<String, Formula>) -> bool {
    match (t, f) {
        (Formula::Meta(n, args), _) if args.is_empty() => match map.get(n) {
            Some(bound) => alpha_eq(bound, f),
            None => {
                map.insert(n.clone(), f.clone());
                true
            }
        },
        (Formula::Not(a), Formula::Not(b)) => match_template(a, b, map),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => match_template(a1, b1, map) && match_template(a2, b2, map),
        _ => false,
    }
}

fn quantifier_instance(v: &Var, body: &Formula, inst: &Formula, arg: Option<&Arg>) -> Result<(), String> {
    if !free_vars(body).contains(v) {
        return if alpha_eq(body, inst) { Ok(()) } else { Err("instance differs from the quantified body".into()) };
    }
    let witness = match arg {
        Some(a) => a.clone(),
        None => find_witness(body, v, inst).ok_or("cannot find the instantiating term; give it as `[t]`")?,
    };
    let expected = substitute(body, v, &witness, SubstMode::Rename).map_err(|e| e.to_string())?;
    if alpha_eq(&expected, inst) {
        Ok(())
    } else {
        Err(format!("instance is not the body with {v} := {witness}"))
    }
}

/// Locates what the first free occurrence of `v` in `body` corresponds to in `inst`.
fn find_witness(body: &Formula, v: &Var, inst: &Formula) -> Option<Arg> {
    match (body, inst) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => witness_term(a1, v, b1).or_else(|| witness_term(a2, v, b2)),
        (Formula::Meta(n, xs), Formula::Meta(m, ys)) if n == m && xs.len() == ys.len() => {
            xs.iter().zip(ys).find_map(|(x, y)| witness_arg(x, v, y))
        }
        (Formula::Not(a), Formula::Not(b)) => find_witness(a, v, b),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => find_witness(a1, v, b1).or_else(|| find_witness(a2, v, b2)),
        (Formula::Quant(q1, w1, a), Formula::Quant(q2, w2, b)) if q1 == q2 && w1.sort() == w2.sort() => {
            if w1 == v {
                None
            } else {
                find_witness(a, v, b)
            }
        }
        _ => None,
    }
}

fn witness_arg(a: &Arg, v: &Var, b: &Arg) -> Option<Arg> {
    match (a, b) {
        (Arg::Term(x), Arg::Term(y)) => witness_term(x, v, y),
        (Arg::Functor(x), Arg::Functor(y)) => witness_functor(x, v, y),
        _ => None,
    }
}

fn witness_functor(a: &Functor, v: &Var, b: &Functor) -> Option<Arg> {
    match (a, b) {
        (Functor::Var(n), _) if *v == Var::seq(n.clone()) => Some(Arg::Functor(b.clone())),
        (Functor::Lambda(x, s), Functor::Lambda(_, t)) if *v != Var::num(x.clone()) => witness_term(s, v, t),
        _ => None,
    }
}

fn witness_term(a: &Term, v: &Var, b: &Term) -> Option<Arg> {
    match (a, b) {
        (Term::Var(n), _) if *v == Var::num(n.clone()) => Some(Arg::Term(b.clone())),
        (Term::Const(n, xs), Term::Const(m, ys)) if n == m && xs.len() == ys.len() => {
            xs.iter().zip(ys).find_map(|(x, y)| witness_arg(x, v, y))
        }
        (Term::Apply(f, x), Term::Apply(g, y)) => witness_functor(f, v, g).or_else(|| witness_term(x, v, y)),
        _ => None,
    }
}

/// True if `q` arises from `p` by replacing some free occurrences of `s` by `t`.
fn replaces(p: &Formula, q: &Formula, s: &Term, t: &Term, hidden: &BTreeSet<Var>, bound: &mut Vec<Var>) -> bool {
    let under = |v: &Var, a: &Formula, b: &Formula, bound: &mut Vec<Var>| {
        bound.push(v.clone());
        let ok = replaces(a, b, s, t, hidden, bound);
        bound.pop();
        ok
    };
    match (p, q) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
            replaces_term(a1, b1, s, t, hidden, bound) && replaces_term(a2, b2, s, t, hidden, bound)
        }
        (Formula::Meta(n, xs), Formula::Meta(m, ys)) => {
            n == m && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| replaces_arg(x, y, s, t, hidden, bound))
        }
        (Formula::Not(a), Formula::Not(b)) => replaces(a, b, s, t, hidden, bound),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => {
            replaces(a1, b1, s, t, hidden, bound) && replaces(a2, b2, s, t, hidden, bound)
        }
        (Formula::Quant(q1, v1, a), Formula::Quant(q2, v2, b)) if q1 == q2 && v1 == v2 => under(v1, a, b, bound),
        _ => false,
    }
}

fn replaces_arg(a: &Arg, b: &Arg, s: &Term, t: &Term, hidden: &BTreeSet<Var>, bound: &mut Vec<Var>) -> bool {
    match (a, b) {
        (Arg::Term(x), Arg::Term(y)) => replaces_term(x, y, s, t, hidden, bound),
        (Arg::Functor(x), Arg::Functor(y)) => replaces_functor(x, y, s, t, hidden, bound),
        _ => false,
    }
}

fn replaces_functor(a: &Functor, b: &Functor, s: &Term, t: &Term, hidden: &BTreeSet<Var>, bound: &mut Vec<Var>) -> bool {
    match (a, b) {
        (Functor::Var(x), Functor::Var(y)) => x == y,
        (Functor::Lambda(x, u), Functor::Lambda(y, w)) if x == y => {
            bound.push(Var::num(x.clone()));
            let ok = replaces_term(u, w, s, t, hidden, bound);
            bound.pop();
            ok
        }
        _ => false,
    }
}

fn replaces_term(a: &Term, b: &Term, s: &Term, t: &Term, hidden: &BTreeSet<Var>, bound: &mut Vec<Var>) -> bool {
    if a == b {
        return true;
    }
    if a == s && b == t && !bound.iter().any(|v| hidden.contains(v)) {
        return true;
    }
    match (a, b) {
        (Term::Const(n, xs), Term::Const(m, ys)) => {
            n == m && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| replaces_arg(x, y, s, t, hidden, bound))
        }
        (Term::Apply(f, x), Term::Apply(g, y)) => {
            replaces_functor(f, g, s, t, hidden, bound) && replaces_term(x, y, s, t, hidden, bound)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{normalize_for_kernel, parse_arg};

    fn check(id: &str, f: &str, arg: Option<&str>) -> Result<(), String> {
        let a = arg.map(|a| parse_arg(a).unwrap());
        Postulates::standard().check(id, &normalize_for_kernel(&parse(f).unwrap()), a.as_ref())
    }

    #[test]
    fn propositional_instances() {
        assert!(check("K", "x = 0 -> (A y. y = y) -> x = 0", None).is_ok());
        assert!(check("K", "x = 0 -> y = 0 -> y = 0", None).is_err());
        assert!(check("S", "(p = 0 -> q = 0) -> (p = 0 -> q = 0 -> r = 0) -> p = 0 -> r = 0", None).is_ok());
        assert!(check("neg-elim", "~0 = 1 -> 0 = 1 -> A $a. $a(0) = 3", None).is_ok());
        assert!(check("or-elim", "(p = 0 -> r = 0) -> (q = 0 -> r = 0) -> p = 0 \\/ q = 0 -> r = 0", None).is_ok());
        assert!(check("and-l", "p = 0 & q = 0 -> q = 0", None).is_err());
        assert!(check("nope", "0 = 0", None).is_err());
    }

    #[test]
    fn quantifier_instances() {
        assert!(check("all-elim", "(A x. E y. y = x) -> E y. y = suc(z)", None).is_ok());
        // Capture is avoided by renaming the inner binder.
        assert!(check("all-elim", "(A x. E y. y = x) -> E y1. y1 = y", None).is_ok());
        assert!(check("all-elim", "(A x. E y. y = x) -> E y. y = y", None).is_err());
        assert!(check("all-elim", "(A $a. $a(0) = 0) -> (\\u. u)(0) = 0", None).is_ok());
        assert!(check("ex-intro", "0 = 0 -> E x. x = 0", None).is_ok());
        assert!(check("ex-intro", "0 = 0 -> E x. x = x", Some("0")).is_ok());
        assert!(check("ex-intro", "0 = 0 -> E x. x = x", Some("1")).is_err());
        assert!(check("all-elim", "(A x. 0 = 0) -> 0 = 0", None).is_ok());
    }

    #[test]
    fn equality_postulates() {
        assert!(check("refl", "$a(x) = $a(x)", None).is_ok());
        assert!(check("refl", "x = y", None).is_err());
        assert!(check("eq-repl", "x = y -> x = x -> y = x", None).is_ok());
        assert!(check("eq-repl", "x = y -> $a(x) = $a(x) -> $a(x) = $a(y)", None).is_ok());
        assert!(check("eq-repl", "x = y -> (A x. x = 0) -> A x. y = 0", None).is_err());
        assert!(check("eq-repl", "z = y -> (A x. z = x) -> A x. y = x", None).is_ok());
        assert!(check("eq-repl", "z = x -> (A x. z = x) -> A x. x = x", None).is_err());
        assert!(check("eq-repl", "x = y -> x = 0 -> y = 1", None).is_err());
    }
}
