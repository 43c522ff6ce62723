//! Desugaring of bounded, relativized and unique-existence quantifiers,
//! and the inverse re-sugaring used for display.

use std::collections::BTreeSet;

use super::subst::{alpha_eq, fresh_name, free_vars, free_vars_term, substitute, variable_names, SubstMode};
use super::{Arg, BoundRel, Formula, Functor, Quantifier, Term, Var};

/// A named guard for relativized sequence quantifiers, e.g. the binary fan
/// `A x. $a(x) <= 1` over the variable `a`.
#[derive(Debug, Clone)]
pub struct Guard {
    pub var: String,
    pub formula: Formula,
}

impl Guard {
    pub fn new(var: impl Into<String>, formula: Formula) -> Self {
        Guard { var: var.into(), formula }
    }

    /// The binary fan guard `B(a) == A x. $a(x) <= 1`.
    pub fn binary_fan() -> Self {
        Guard::new("a", super::parse("A x. $a(x) <= 1").expect("fan guard parses"))
    }

    fn instance_for(&self, var: &str) -> Formula {
        substitute(&self.formula, &Var::seq(self.var.clone()), &Arg::Functor(Functor::var(var)), SubstMode::Rename)
            .expect("sorts agree")
    }
}

fn bound_atom(rel: BoundRel, var: &str, bound: &Term) -> Formula {
    Formula::Eq(Term::binary(rel.constant(), Term::var(var), bound.clone()), Term::Numeral(0))
}

/// Replaces bounded and relativized quantifiers by their unbounded
/// readings and expands `E!`. Biconditionals are kept.
pub fn desugar(f: &Formula) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Meta(..) => f.clone(),
        Formula::Not(a) => Formula::not(desugar(a)),
        Formula::And(a, b) => Formula::and(desugar(a), desugar(b)),
        Formula::Or(a, b) => Formula::or(desugar(a), desugar(b)),
        Formula::Imp(a, b) => Formula::imp(desugar(a), desugar(b)),
        Formula::Iff(a, b) => Formula::iff(desugar(a), desugar(b)),
        Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(desugar(body))),
        Formula::Bounded { q, var, rel, bound, body } => {
            let body = desugar(body);
            // The bound sits outside the binder; rename if it mentions the variable.
            let (var, body) = if free_vars_term(bound).num.contains(var) {
                let mut avoid = variable_names(&body);
                avoid.extend(free_vars_term(bound).num);
                let fresh = fresh_name(var, &avoid);
                let renamed = substitute(&body, &Var::num(var.clone()), &Arg::Term(Term::var(fresh.clone())), SubstMode::Rename)
                    .expect("fresh variable");
                (fresh, renamed)
            } else {
                (var.clone(), body)
            };
            let atom = bound_atom(*rel, &var, bound);
            let inner = match q {
                Quantifier::Forall => Formula::imp(atom, body),
                Quantifier::Exists => Formula::and(atom, body),
            };
            Formula::Quant(*q, Var::Num(var), Box::new(inner))
        }
        Formula::Relativized { q, var, guard, body } => {
            let (g, b) = (desugar(guard), desugar(body));
            let inner = match q {
                Quantifier::Forall => Formula::imp(g, b),
                Quantifier::Exists => Formula::and(g, b),
            };
            Formula::Quant(*q, Var::Seq(var.clone()), Box::new(inner))
        }
        Formula::Unique(var, body) => expand_unique_node(var, &desugar(body)),
    }
}

fn expand_unique_node(var: &str, body: &Formula) -> Formula {
    let mut avoid: BTreeSet<String> = variable_names(body);
    avoid.insert(var.to_string());
    let z = if avoid.contains("z") { fresh_name("z", &avoid) } else { "z".to_string() };
    let body_z = substitute(body, &Var::num(var), &Arg::Term(Term::var(z.clone())), SubstMode::Rename)
        .expect("fresh variable");
    let existence = Formula::exists(Var::num(var), body.clone());
    let uniqueness = Formula::forall(
        Var::num(var),
        Formula::forall(
            Var::num(z.clone()),
            Formula::imp(Formula::and(body.clone(), body_z), Formula::eq(Term::var(var), Term::var(z))),
        ),
    );
    Formula::and(existence, uniqueness)
}

/// Expands only the `E!` abbreviation, leaving other sugar in place.
pub fn expand_unique(f: &Formula) -> Formula {
    map_children(f, &expand_unique, &|v, body| expand_unique_node(v, &expand_unique(body)))
}

/// Rewrites every `A <-> B` as `(A -> B) & (B -> A)`.
pub fn expand_iff(f: &Formula) -> Formula {
    match f {
        Formula::Iff(a, b) => {
            let (a, b) = (expand_iff(a), expand_iff(b));
            Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
        }
        _ => map_children(f, &expand_iff, &|v, body| Formula::Unique(v.to_string(), Box::new(expand_iff(body)))),
    }
}

fn map_children(
    f: &Formula,
    rec: &dyn Fn(&Formula) -> Formula,
    unique: &dyn Fn(&str, &Formula) -> Formula,
) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Meta(..) => f.clone(),
        Formula::Not(a) => Formula::not(rec(a)),
        Formula::And(a, b) => Formula::and(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::or(rec(a), rec(b)),
        Formula::Imp(a, b) => Formula::imp(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::iff(rec(a), rec(b)),
        Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(rec(body))),
        Formula::Bounded { q, var, rel, bound, body } => Formula::Bounded {
            q: *q,
            var: var.clone(),
            rel: *rel,
            bound: bound.clone(),
            body: Box::new(rec(body)),
        },
        Formula::Relativized { q, var, guard, body } => Formula::Relativized {
            q: *q,
            var: var.clone(),
            guard: Box::new(rec(guard)),
            body: Box::new(rec(body)),
        },
        Formula::Unique(v, body) => unique(v, body),
    }
}

/// Restores bounded quantifiers, and relativized quantifiers for the given
/// guards, where the desugared shape is recognized.
pub fn sugar(f: &Formula, guards: &[Guard]) -> Formula {
    let rec = |g: &Formula| sugar(g, guards);
    match f {
        Formula::Quant(q, Var::Num(x), body) => {
            if let Some((rel, bound, rest)) = bounded_shape(*q, x, body) {
                return Formula::Bounded { q: *q, var: x.clone(), rel, bound, body: Box::new(rec(rest)) };
            }
            Formula::Quant(*q, Var::Num(x.clone()), Box::new(rec(body)))
        }
        Formula::Quant(q, Var::Seq(a), body) => {
            let split = match (q, body.as_ref()) {
                (Quantifier::Forall, Formula::Imp(g, rest)) | (Quantifier::Exists, Formula::And(g, rest)) => {
                    Some((g, rest))
                }
                _ => None,
            };
            if let Some((g, rest)) = split {
                if guards.iter().any(|gd| alpha_eq(&gd.instance_for(a), g)) {
                    return Formula::Relativized {
                        q: *q,
                        var: a.clone(),
                        guard: g.clone(),
                        body: Box::new(rec(rest)),
                    };
                }
            }
            Formula::Quant(*q, Var::Seq(a.clone()), Box::new(rec(body)))
        }
        _ => map_children(f, &rec, &|v, body| Formula::Unique(v.to_string(), Box::new(rec(body)))),
    }
}

fn bounded_shape<'a>(q: Quantifier, x: &str, body: &'a Formula) -> Option<(BoundRel, Term, &'a Formula)> {
    let (atom, rest) = match (q, body) {
        (Quantifier::Forall, Formula::Imp(a, r)) | (Quantifier::Exists, Formula::And(a, r)) => (a, r),
        _ => return None,
    };
    if let Formula::Eq(Term::Const(name, args), Term::Numeral(0)) = atom.as_ref() {
        let rel = match name.as_str() {
            "le" => BoundRel::Le,
            "lt" => BoundRel::Lt,
            _ => return None,
        };
        if let [Arg::Term(Term::Var(v)), Arg::Term(bound)] = args.as_slice() {
            if v == x && !free_vars_term(bound).num.contains(x) {
                return Some((rel, bound.clone(), rest.as_ref()));
            }
        }
    }
    None
}

fn numerals_to_successors(t: &Term) -> Term {
    match t {
        Term::Numeral(n) => {
            let mut out = Term::Numeral(0);
            for _ in 0..*n {
                out = Term::unary("suc", out);
            }
            out
        }
        Term::Var(_) => t.clone(),
        Term::Const(n, args) => Term::Const(n.clone(), args.iter().map(arg_successors).collect()),
        Term::Apply(f, x) => Term::Apply(Box::new(functor_successors(f)), Box::new(numerals_to_successors(x))),
    }
}

fn functor_successors(f: &Functor) -> Functor {
    match f {
        Functor::Var(_) => f.clone(),
        Functor::Lambda(v, b) => Functor::Lambda(v.clone(), Box::new(numerals_to_successors(b))),
    }
}

fn arg_successors(a: &Arg) -> Arg {
    match a {
        Arg::Term(t) => Arg::Term(numerals_to_successors(t)),
        Arg::Functor(f) => Arg::Functor(functor_successors(f)),
    }
}

fn formula_successors(f: &Formula) -> Formula {
    match f {
        Formula::Eq(a, b) => Formula::Eq(numerals_to_successors(a), numerals_to_successors(b)),
        Formula::Meta(n, args) => Formula::Meta(n.clone(), args.iter().map(arg_successors).collect()),
        _ => map_children(f, &formula_successors, &|v, body| {
            Formula::Unique(v.to_string(), Box::new(formula_successors(body)))
        }),
    }
}

/// The form the proof kernel compares: no sugar, no `<->`, numerals
/// spelled as successor chains.
pub fn normalize_for_kernel(f: &Formula) -> Formula {
    formula_successors(&expand_iff(&desugar(f)))
}

/// True if `v` occurs free in `f`.
#[allow(dead_code)]
pub(crate) fn occurs_free(v: &Var, f: &Formula) -> bool {
    free_vars(f).contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, print};

    #[test]
    fn bounded_desugars_and_resugars() {
        let f = parse("A x <= t. E y < x. $a(y) = x").unwrap();
        let d = desugar(&f);
        assert_eq!(print(&d), "A x. x <= t -> E y. y < x & $a(y) = x");
        assert_eq!(sugar(&d, &[]), f);
    }

    #[test]
    fn bound_mentioning_the_variable_is_renamed() {
        let f = parse("E x < x. x = 0").unwrap();
        assert_eq!(print(&desugar(&f)), "E x1. x1 < x & x1 = 0");
    }

    #[test]
    fn relativized_resugars_only_with_known_guard() {
        let f = parse("A $b | (A x. $b(x) <= 1). E x. $b(x) = 0").unwrap();
        let d = desugar(&f);
        assert_eq!(print(&d), "A $b. (A x. $b(x) <= 1) -> E x. $b(x) = 0");
        assert_eq!(sugar(&d, &[Guard::binary_fan()]), f);
        assert!(matches!(sugar(&d, &[]), Formula::Quant(..)));
    }

    #[test]
    fn unique_existence_expansion() {
        let f = parse("E! y. ?A(x, y)").unwrap();
        assert_eq!(
            print(&desugar(&f)),
            "(E y. ?A(x, y)) & A y. A z. ?A(x, y) & ?A(x, z) -> y = z"
        );
    }

    #[test]
    fn kernel_normal_form() {
        let f = parse("2 = x <-> x = 2").unwrap();
        assert_eq!(
            print(&normalize_for_kernel(&f)),
            "(suc(suc(0)) = x -> x = suc(suc(0))) & (x = suc(suc(0)) -> suc(suc(0)) = x)"
        );
    }
}
