//! Free variables, capture-avoiding substitution and alpha-equivalence.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{Arg, Formula, Functor, Sort, Term, Var};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub num: BTreeSet<String>,
    pub seq: BTreeSet<String>,
}

impl FreeVars {
    pub fn contains(&self, v: &Var) -> bool {
        match v {
            Var::Num(n) => self.num.contains(n),
            Var::Seq(n) => self.seq.contains(n),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty() && self.seq.is_empty()
    }

    pub fn extend(&mut self, other: FreeVars) {
        self.num.extend(other.num);
        self.seq.extend(other.seq);
    }

    pub fn remove(&mut self, v: &Var) {
        match v {
            Var::Num(n) => self.num.remove(n),
            Var::Seq(n) => self.seq.remove(n),
        };
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.num.iter().map(|n| Var::Num(n.clone())).chain(self.seq.iter().map(|n| Var::Seq(n.clone())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("cannot substitute a {found} object for the {expected} variable `{var}`")]
    SortMismatch { var: String, expected: Sort, found: Sort },
    #[error("substitution for `{var}` is captured by the binder `{binder}`")]
    Capture { var: String, binder: String },
}

/// Strict substitution fails on capture; `Rename` renames the binder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstMode {
    Strict,
    Rename,
}

pub fn free_vars(f: &Formula) -> FreeVars {
    let mut fv = FreeVars::default();
    fv_formula(f, &mut fv);
    fv
}

pub fn free_vars_term(t: &Term) -> FreeVars {
    let mut fv = FreeVars::default();
    fv_term(t, &mut fv);
    fv
}

pub fn free_vars_arg(a: &Arg) -> FreeVars {
    let mut fv = FreeVars::default();
    match a {
        Arg::Term(t) => fv_term(t, &mut fv),
        Arg::Functor(f) => fv_functor(f, &mut fv),
    }
    fv
}

fn fv_term(t: &Term, out: &mut FreeVars) {
    match t {
        Term::Var(v) => {
            out.num.insert(v.clone());
        }
        Term::Numeral(_) => {}
        Term::Const(_, args) => {
            for a in args {
                out.extend(free_vars_arg(a));
            }
        }
        Term::Apply(f, x) => {
            fv_functor(f, out);
            fv_term(x, out);
        }
    }
}

fn fv_functor(f: &Functor, out: &mut FreeVars) {
    match f {
        Functor::Var(v) => {
            out.seq.insert(v.clone());
        }
        Functor::Lambda(x, body) => {
            let mut inner = free_vars_term(body);
            inner.num.remove(x);
            out.extend(inner);
        }
    }
}

fn fv_formula(f: &Formula, out: &mut FreeVars) {
    match f {
        Formula::Eq(a, b) => {
            fv_term(a, out);
            fv_term(b, out);
        }
        Formula::Meta(_, args) => {
            for a in args {
                out.extend(free_vars_arg(a));
            }
        }
        Formula::Not(a) => fv_formula(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            fv_formula(a, out);
            fv_formula(b, out);
        }
        Formula::Quant(_, v, body) => {
            let mut inner = free_vars(body);
            inner.remove(v);
            out.extend(inner);
        }
        Formula::Bounded { var, bound, body, .. } => {
            fv_term(bound, out);
            let mut inner = free_vars(body);
            inner.num.remove(var);
            out.extend(inner);
        }
        Formula::Relativized { var, guard, body, .. } => {
            let mut inner = free_vars(guard);
            inner.extend(free_vars(body));
            inner.seq.remove(var);
            out.extend(inner);
        }
        Formula::Unique(var, body) => {
            let mut inner = free_vars(body);
            inner.num.remove(var);
            out.extend(inner);
        }
    }
}

/// Every variable name (free or bound, both sorts) occurring in `f`.
pub fn variable_names(f: &Formula) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    names_formula(f, &mut names);
    names
}

fn names_term(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Numeral(_) => {}
        Term::Const(_, args) => args.iter().for_each(|a| names_arg(a, out)),
        Term::Apply(f, x) => {
            names_functor(f, out);
            names_term(x, out);
        }
    }
}

fn names_functor(f: &Functor, out: &mut BTreeSet<String>) {
    match f {
        Functor::Var(v) => {
            out.insert(v.clone());
        }
        Functor::Lambda(x, body) => {
            out.insert(x.clone());
            names_term(body, out);
        }
    }
}

fn names_arg(a: &Arg, out: &mut BTreeSet<String>) {
    match a {
        Arg::Term(t) => names_term(t, out),
        Arg::Functor(f) => names_functor(f, out),
    }
}

fn names_formula(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Eq(a, b) => {
            names_term(a, out);
            names_term(b, out);
        }
        Formula::Meta(_, args) => args.iter().for_each(|a| names_arg(a, out)),
        Formula::Not(a) => names_formula(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            names_formula(a, out);
            names_formula(b, out);
        }
        Formula::Quant(_, v, body) => {
            out.insert(v.name().to_string());
            names_formula(body, out);
        }
        Formula::Bounded { var, bound, body, .. } => {
            out.insert(var.clone());
            names_term(bound, out);
            names_formula(body, out);
        }
        Formula::Relativized { var, guard, body, .. } => {
            out.insert(var.clone());
            names_formula(guard, out);
            names_formula(body, out);
        }
        Formula::Unique(var, body) => {
            out.insert(var.clone());
            names_formula(body, out);
        }
    }
}

/// A name derived from `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded search")
}

type Map = BTreeMap<Var, Arg>;

/// Replaces the free occurrences of `var` in `f` by `replacement`.
pub fn substitute(f: &Formula, var: &Var, replacement: &Arg, mode: SubstMode) -> Result<Formula, SubstError> {
    let mut map = Map::new();
    map.insert(var.clone(), replacement.clone());
    substitute_many(f, &map, mode)
}

/// Simultaneous substitution.
pub fn substitute_many(f: &Formula, map: &BTreeMap<Var, Arg>, mode: SubstMode) -> Result<Formula, SubstError> {
    for (v, a) in map {
        check_sort(v, a)?;
    }
    Subst { mode }.formula(f, map)
}

pub fn substitute_term(t: &Term, var: &Var, replacement: &Arg, mode: SubstMode) -> Result<Term, SubstError> {
    check_sort(var, replacement)?;
    let mut map = Map::new();
    map.insert(var.clone(), replacement.clone());
    Subst { mode }.term(t, &map)
}

fn check_sort(v: &Var, a: &Arg) -> Result<(), SubstError> {
    if v.sort() != a.sort() {
        return Err(SubstError::SortMismatch { var: v.to_string(), expected: v.sort(), found: a.sort() });
    }
    Ok(())
}

struct Subst {
    mode: SubstMode,
}

enum Scope {
    /// Binder kept as is, with the reduced map.
    Keep(Map),
    /// Binder renamed to the given name.
    Renamed(String, Map),
}

impl Subst {
    /// Works out what happens when the substitution passes the binder
    /// `binder`, whose scope has free variables `inner_fv`.
    fn enter(&self, binder: &Var, inner_fv: &FreeVars, map: &Map) -> Result<Scope, SubstError> {
        let live: Map = map
            .iter()
            .filter(|(v, _)| *v != binder && inner_fv.contains(v))
            .map(|(v, a)| (v.clone(), a.clone()))
            .collect();
        let captured = live.iter().find(|(_, a)| free_vars_arg(a).contains(binder));
        match captured {
            None => Ok(Scope::Keep(live)),
            Some((v, _)) if self.mode == SubstMode::Strict => {
                Err(SubstError::Capture { var: v.to_string(), binder: binder.to_string() })
            }
            Some(_) => {
                let mut avoid: BTreeSet<String> = inner_fv.num.iter().chain(inner_fv.seq.iter()).cloned().collect();
                for (v, a) in &live {
                    avoid.insert(v.name().to_string());
                    let fa = free_vars_arg(a);
                    avoid.extend(fa.num);
                    avoid.extend(fa.seq);
                }
                avoid.insert(binder.name().to_string());
                let fresh = fresh_name(binder.name(), &avoid);
                let mut renamed = live;
                let target = match binder {
                    Var::Num(_) => Arg::Term(Term::Var(fresh.clone())),
                    Var::Seq(_) => Arg::Functor(Functor::Var(fresh.clone())),
                };
                renamed.insert(binder.clone(), target);
                Ok(Scope::Renamed(fresh, renamed))
            }
        }
    }

    fn formula(&self, f: &Formula, map: &Map) -> Result<Formula, SubstError> {
        if map.is_empty() {
            return Ok(f.clone());
        }
        Ok(match f {
            Formula::Eq(a, b) => Formula::Eq(self.term(a, map)?, self.term(b, map)?),
            Formula::Meta(n, args) => Formula::Meta(n.clone(), self.args(args, map)?),
            Formula::Not(a) => Formula::not(self.formula(a, map)?),
            Formula::And(a, b) => Formula::and(self.formula(a, map)?, self.formula(b, map)?),
            Formula::Or(a, b) => Formula::or(self.formula(a, map)?, self.formula(b, map)?),
            Formula::Imp(a, b) => Formula::imp(self.formula(a, map)?, self.formula(b, map)?),
            Formula::Iff(a, b) => Formula::iff(self.formula(a, map)?, self.formula(b, map)?),
            Formula::Quant(q, v, body) => {
                let (v2, inner) = self.scope(v, &free_vars(body), map)?;
                Formula::Quant(*q, v2, Box::new(self.formula(body, &inner)?))
            }
            Formula::Bounded { q, var, rel, bound, body } => {
                let bound = self.term(bound, map)?;
                let (v2, inner) = self.scope(&Var::Num(var.clone()), &free_vars(body), map)?;
                Formula::Bounded {
                    q: *q,
                    var: v2.name().to_string(),
                    rel: *rel,
                    bound,
                    body: Box::new(self.formula(body, &inner)?),
                }
            }
            Formula::Relativized { q, var, guard, body } => {
                let mut fv = free_vars(guard);
                fv.extend(free_vars(body));
                let (v2, inner) = self.scope(&Var::Seq(var.clone()), &fv, map)?;
                Formula::Relativized {
                    q: *q,
                    var: v2.name().to_string(),
                    guard: Box::new(self.formula(guard, &inner)?),
                    body: Box::new(self.formula(body, &inner)?),
                }
            }
            Formula::Unique(var, body) => {
                let (v2, inner) = self.scope(&Var::Num(var.clone()), &free_vars(body), map)?;
                Formula::Unique(v2.name().to_string(), Box::new(self.formula(body, &inner)?))
            }
        })
    }

    fn scope(&self, binder: &Var, inner_fv: &FreeVars, map: &Map) -> Result<(Var, Map), SubstError> {
        Ok(match self.enter(binder, inner_fv, map)? {
            Scope::Keep(m) => (binder.clone(), m),
            Scope::Renamed(n, m) => (binder.with_name(n), m),
        })
    }

    fn args(&self, args: &[Arg], map: &Map) -> Result<Vec<Arg>, SubstError> {
        args.iter()
            .map(|a| match a {
                Arg::Term(t) => self.term(t, map).map(Arg::Term),
                Arg::Functor(f) => self.functor(f, map).map(Arg::Functor),
            })
            .collect()
    }

    fn term(&self, t: &Term, map: &Map) -> Result<Term, SubstError> {
        Ok(match t {
            Term::Var(v) => match map.get(&Var::Num(v.clone())) {
                Some(Arg::Term(r)) => r.clone(),
                _ => t.clone(),
            },
            Term::Numeral(_) => t.clone(),
            Term::Const(n, args) => Term::Const(n.clone(), self.args(args, map)?),
            Term::Apply(f, x) => Term::Apply(Box::new(self.functor(f, map)?), Box::new(self.term(x, map)?)),
        })
    }

    fn functor(&self, f: &Functor, map: &Map) -> Result<Functor, SubstError> {
        Ok(match f {
            Functor::Var(v) => match map.get(&Var::Seq(v.clone())) {
                Some(Arg::Functor(r)) => r.clone(),
                _ => f.clone(),
            },
            Functor::Lambda(x, body) => {
                let (v2, inner) = self.scope(&Var::Num(x.clone()), &free_vars_term(body), map)?;
                Functor::Lambda(v2.name().to_string(), Box::new(self.term(body, &inner)?))
            }
        })
    }
}

/// Alpha-equivalence: equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    Alpha::default().formula(a, b)
}

pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    Alpha::default().term(a, b)
}

#[derive(Default)]
struct Alpha {
    stack: Vec<(Var, Var)>,
}

impl Alpha {
    fn var(&self, l: &Var, r: &Var) -> bool {
        for (bl, br) in self.stack.iter().rev() {
            let hit_l = bl == l;
            let hit_r = br == r;
            if hit_l || hit_r {
                return hit_l && hit_r;
            }
        }
        l == r
    }

    fn bind<T>(&mut self, l: Var, r: Var, k: impl FnOnce(&mut Self) -> T) -> T {
        self.stack.push((l, r));
        let out = k(self);
        self.stack.pop();
        out
    }

    fn formula(&mut self, a: &Formula, b: &Formula) -> bool {
        match (a, b) {
            (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => self.term(a1, b1) && self.term(a2, b2),
            (Formula::Meta(n, xs), Formula::Meta(m, ys)) => n == m && self.args(xs, ys),
            (Formula::Not(x), Formula::Not(y)) => self.formula(x, y),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
            | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => self.formula(a1, b1) && self.formula(a2, b2),
            (Formula::Quant(q1, v1, x), Formula::Quant(q2, v2, y)) => {
                q1 == q2 && v1.sort() == v2.sort() && self.bind(v1.clone(), v2.clone(), |s| s.formula(x, y))
            }
            (
                Formula::Bounded { q: q1, var: v1, rel: r1, bound: t1, body: x },
                Formula::Bounded { q: q2, var: v2, rel: r2, bound: t2, body: y },
            ) => {
                q1 == q2
                    && r1 == r2
                    && self.term(t1, t2)
                    && self.bind(Var::Num(v1.clone()), Var::Num(v2.clone()), |s| s.formula(x, y))
            }
            (
                Formula::Relativized { q: q1, var: v1, guard: g1, body: x },
                Formula::Relativized { q: q2, var: v2, guard: g2, body: y },
            ) => {
                q1 == q2
                    && self.bind(Var::Seq(v1.clone()), Var::Seq(v2.clone()), |s| s.formula(g1, g2) && s.formula(x, y))
            }
            (Formula::Unique(v1, x), Formula::Unique(v2, y)) => {
                self.bind(Var::Num(v1.clone()), Var::Num(v2.clone()), |s| s.formula(x, y))
            }
            _ => false,
        }
    }

    fn args(&mut self, xs: &[Arg], ys: &[Arg]) -> bool {
        xs.len() == ys.len()
            && xs.iter().zip(ys).all(|(x, y)| match (x, y) {
                (Arg::Term(a), Arg::Term(b)) => self.term(a, b),
                (Arg::Functor(a), Arg::Functor(b)) => self.functor(a, b),
                _ => false,
            })
    }

    fn term(&mut self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => self.var(&Var::Num(x.clone()), &Var::Num(y.clone())),
            (Term::Numeral(m), Term::Numeral(n)) => m == n,
            (Term::Const(n, xs), Term::Const(m, ys)) => n == m && self.args(xs, ys),
            (Term::Apply(f, x), Term::Apply(g, y)) => self.functor(f, g) && self.term(x, y),
            _ => false,
        }
    }

    fn functor(&mut self, a: &Functor, b: &Functor) -> bool {
        match (a, b) {
            (Functor::Var(x), Functor::Var(y)) => self.var(&Var::Seq(x.clone()), &Var::Seq(y.clone())),
            (Functor::Lambda(x, s), Functor::Lambda(y, t)) => {
                self.bind(Var::Num(x.clone()), Var::Num(y.clone()), |st| st.term(s, t))
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, parse_arg, print};

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_variables() {
        let fv = free_vars(&parse("A x. $a(x) = 0").unwrap());
        assert_eq!((fv.num, fv.seq), (set(&[]), set(&["a"])));
        let fv = free_vars(&parse("~(A x. ~$a(x) = 0) -> E x. $a(x) = 0").unwrap());
        assert_eq!((fv.num, fv.seq), (set(&[]), set(&["a"])));
        let fv = free_vars(&parse("(\\x. $b(pair(x, y)))(z) = 0").unwrap());
        assert_eq!((fv.num, fv.seq), (set(&["y", "z"]), set(&["b"])));
    }

    #[test]
    fn simple_substitution() {
        let f = parse("$a(x) = 0").unwrap();
        let g = substitute(&f, &Var::num("x"), &parse_arg("0").unwrap(), SubstMode::Strict).unwrap();
        assert_eq!(print(&g), "$a(0) = 0");
    }

    #[test]
    fn strict_capture_is_reported() {
        let f = parse("E y. y = x").unwrap();
        let err = substitute(&f, &Var::num("x"), &parse_arg("y").unwrap(), SubstMode::Strict).unwrap_err();
        assert_eq!(err, SubstError::Capture { var: "x".into(), binder: "y".into() });
    }

    #[test]
    fn renaming_avoids_capture() {
        let f = parse("E y. y = x").unwrap();
        let g = substitute(&f, &Var::num("x"), &parse_arg("y").unwrap(), SubstMode::Rename).unwrap();
        assert_eq!(print(&g), "E y1. y1 = y");
    }

    #[test]
    fn no_capture_when_variable_absent_below_binder() {
        let f = parse("x = 0 & E y. y = 0").unwrap();
        let g = substitute(&f, &Var::num("x"), &parse_arg("y").unwrap(), SubstMode::Strict).unwrap();
        assert_eq!(print(&g), "y = 0 & E y. y = 0");
    }

    #[test]
    fn functor_substitution_and_sort_mismatch() {
        let f = parse("A x. $a(x) = 0").unwrap();
        let g = substitute(&f, &Var::seq("a"), &parse_arg("\\y. $b(pair(z, y))").unwrap(), SubstMode::Strict).unwrap();
        assert_eq!(print(&g), "A x. (\\y. $b(pair(z, y)))(x) = 0");
        let bad = substitute(&f, &Var::seq("a"), &parse_arg("0").unwrap(), SubstMode::Strict);
        assert!(matches!(bad, Err(SubstError::SortMismatch { .. })));
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let f = parse("x = y").unwrap();
        let mut m = BTreeMap::new();
        m.insert(Var::num("x"), parse_arg("y").unwrap());
        m.insert(Var::num("y"), parse_arg("x").unwrap());
        assert_eq!(print(&substitute_many(&f, &m, SubstMode::Strict).unwrap()), "y = x");
    }

    #[test]
    fn alpha_equivalence() {
        assert!(alpha_eq(&parse("A x. x = y").unwrap(), &parse("A z. z = y").unwrap()));
        assert!(!alpha_eq(&parse("A x. x = y").unwrap(), &parse("A y. y = y").unwrap()));
        assert!(alpha_eq(&parse("A $a. $a(0) = 0").unwrap(), &parse("A $b. $b(0) = 0").unwrap()));
        assert!(!alpha_eq(&parse("A x. A y. x = y").unwrap(), &parse("A y. A x. x = y").unwrap()));
    }

    #[test]
    fn fresh_names_skip_taken() {
        assert_eq!(fresh_name("x", &set(&["x1", "x2"])), "x3");
        assert_eq!(fresh_name("x7", &set(&[])), "x1");
    }
}
