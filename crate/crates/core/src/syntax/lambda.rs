//! Lambda-reduction `(\x. t)(s) = t[x := s]`.
//!
//! Functors are only ever applied to number terms, so every reduction
//! sequence terminates.

use super::subst::{substitute_term, SubstError, SubstMode};
use super::{Arg, Functor, Term, Var};

/// Normal form by leftmost-outermost contraction, renaming bound
/// variables where needed.
pub fn lambda_reduce(t: &Term) -> Term {
    lambda_reduce_with(t, SubstMode::Rename).expect("renaming substitution cannot fail")
}

/// Same as [`lambda_reduce`]; in strict mode a contraction whose argument
/// is not free for the bound variable is an error.
pub fn lambda_reduce_with(t: &Term, mode: SubstMode) -> Result<Term, SubstError> {
    outer(t, mode)
}

/// Normal form by innermost contraction. Agrees with [`lambda_reduce`] up
/// to alpha-equivalence.
pub fn lambda_reduce_innermost(t: &Term) -> Term {
    inner(t)
}

fn contract(var: &str, body: &Term, arg: &Term, mode: SubstMode) -> Result<Term, SubstError> {
    substitute_term(body, &Var::Num(var.to_string()), &Arg::Term(arg.clone()), mode)
}

fn outer(t: &Term, mode: SubstMode) -> Result<Term, SubstError> {
    Ok(match t {
        Term::Var(_) | Term::Numeral(_) => t.clone(),
        Term::Const(n, args) => Term::Const(n.clone(), outer_args(args, mode)?),
        Term::Apply(f, x) => match f.as_ref() {
            Functor::Lambda(v, body) => outer(&contract(v, body, x, mode)?, mode)?,
            Functor::Var(_) => Term::Apply(f.clone(), Box::new(outer(x, mode)?)),
        },
    })
}

fn outer_args(args: &[Arg], mode: SubstMode) -> Result<Vec<Arg>, SubstError> {
    args.iter()
        .map(|a| match a {
            Arg::Term(t) => outer(t, mode).map(Arg::Term),
            Arg::Functor(Functor::Lambda(v, b)) => {
                outer(b, mode).map(|b| Arg::Functor(Functor::Lambda(v.clone(), Box::new(b))))
            }
            Arg::Functor(f) => Ok(Arg::Functor(f.clone())),
        })
        .collect()
}

fn inner(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Numeral(_) => t.clone(),
        Term::Const(n, args) => Term::Const(
            n.clone(),
            args.iter()
                .map(|a| match a {
                    Arg::Term(t) => Arg::Term(inner(t)),
                    Arg::Functor(f) => Arg::Functor(inner_functor(f)),
                })
                .collect(),
        ),
        Term::Apply(f, x) => {
            let x = inner(x);
            match inner_functor(f) {
                Functor::Lambda(v, body) => {
                    contract(&v, &body, &x, SubstMode::Rename).expect("renaming substitution cannot fail")
                }
                g => Term::Apply(Box::new(g), Box::new(x)),
            }
        }
    }
}

fn inner_functor(f: &Functor) -> Functor {
    match f {
        Functor::Var(_) => f.clone(),
        Functor::Lambda(v, b) => Functor::Lambda(v.clone(), Box::new(inner(b))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq_term, parse_term, print_term};

    fn red(s: &str) -> String {
        print_term(&lambda_reduce(&parse_term(s).unwrap()))
    }

    #[test]
    fn successor_redex() {
        assert_eq!(red("(\\x. x + 1)(0)"), "0 + 1");
    }

    #[test]
    fn one_contraction_under_parameters() {
        assert_eq!(red("(\\x. $b(pair(x, y)))(2)"), "$b(pair(2, y))");
    }

    #[test]
    fn normal_terms_are_fixpoints() {
        assert_eq!(red("$a(pair(x, y)) + 3"), "$a(pair(x, y)) + 3");
    }

    #[test]
    fn nested_redexes_agree_in_both_orders() {
        let t = parse_term("(\\x. (\\y. x + y)(x * 2))((\\z. z + 1)(w))").unwrap();
        let a = lambda_reduce(&t);
        let b = lambda_reduce_innermost(&t);
        assert!(alpha_eq_term(&a, &b));
        assert_eq!(print_term(&a), "w + 1 + (w + 1) * 2");
    }

    #[test]
    fn strict_mode_rejects_capture() {
        let t = parse_term("(\\x. bar(\\y. x + y, 0))(y)").unwrap();
        assert!(lambda_reduce_with(&t, SubstMode::Strict).is_err());
        assert_eq!(print_term(&lambda_reduce(&t)), "bar(\\y1. y + y1, 0)");
    }
}
