//! Canonical printer. Output always parses back to the same tree.
//!
//! Binary connectives associate to the right; a quantifier (or a negated
//! quantifier) is printed bare only when nothing follows it inside the
//! current parenthesis group, because its body extends as far right as
//! possible.

use super::{Arg, BoundRel, Formula, Functor, Quantifier, Term, Var};

pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    formula(f, true, &mut out);
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    term(t, 0, &mut out);
    out
}

pub fn print_functor(f: &Functor) -> String {
    let mut out = String::new();
    functor(f, &mut out);
    out
}

pub fn print_arg(a: &Arg) -> String {
    match a {
        Arg::Term(t) => print_term(t),
        Arg::Functor(f) => print_functor(f),
    }
}

fn binary_prec(f: &Formula) -> Option<(u8, &'static str)> {
    match f {
        Formula::Iff(..) => Some((1, "<->")),
        Formula::Imp(..) => Some((2, "->")),
        Formula::Or(..) => Some((3, "\\/")),
        Formula::And(..) => Some((4, "&")),
        _ => None,
    }
}

/// True for nodes whose printed form extends to the right end.
fn open_right(f: &Formula) -> bool {
    match f {
        Formula::Quant(..) | Formula::Bounded { .. } | Formula::Relativized { .. } | Formula::Unique(..) => true,
        Formula::Not(inner) => open_right(inner),
        _ => false,
    }
}

fn formula(f: &Formula, tail: bool, out: &mut String) {
    match f {
        Formula::Eq(a, b) => atom(a, b, out),
        Formula::Meta(name, args) => {
            out.push('?');
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    arg(a, out);
                }
                out.push(')');
            }
        }
        Formula::Not(inner) => {
            if open_right(f) && !tail {
                paren(f, out);
                return;
            }
            out.push('~');
            if binary_prec(inner).is_some() {
                paren(inner, out);
            } else {
                formula(inner, tail, out);
            }
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            let (p, op) = binary_prec(f).unwrap();
            let left_paren = binary_prec(l).is_some_and(|(lp, _)| lp <= p) || open_right(l);
            if left_paren {
                paren(l, out);
            } else {
                formula(l, false, out);
            }
            out.push(' ');
            out.push_str(op);
            out.push(' ');
            let right_paren = binary_prec(r).is_some_and(|(rp, _)| rp < p || (p == 1 && rp == 1));
            if right_paren {
                paren(r, out);
            } else {
                formula(r, tail, out);
            }
        }
        Formula::Quant(..) | Formula::Bounded { .. } | Formula::Relativized { .. } | Formula::Unique(..)
            if !tail =>
        {
            paren(f, out)
        }
        Formula::Quant(q, v, body) => {
            quant_kw(*q, out);
            out.push_str(&v.to_string());
            out.push_str(". ");
            formula(body, true, out);
        }
        Formula::Bounded { q, var, rel, bound, body } => {
            quant_kw(*q, out);
            out.push_str(var);
            out.push_str(match rel {
                BoundRel::Le => " <= ",
                BoundRel::Lt => " < ",
            });
            term(bound, 0, out);
            out.push_str(". ");
            formula(body, true, out);
        }
        Formula::Relativized { q, var, guard, body } => {
            quant_kw(*q, out);
            out.push_str(&Var::Seq(var.clone()).to_string());
            out.push_str(" | ");
            if guard_is_bare(guard) {
                formula(guard, false, out);
            } else {
                paren(guard, out);
            }
            out.push_str(". ");
            formula(body, true, out);
        }
        Formula::Unique(var, body) => {
            out.push_str("E! ");
            out.push_str(var);
            out.push_str(". ");
            formula(body, true, out);
        }
    }
}

fn guard_is_bare(g: &Formula) -> bool {
    match g {
        Formula::Eq(..) | Formula::Meta(..) => true,
        Formula::Not(inner) => guard_is_bare(inner),
        _ => false,
    }
}

fn paren(f: &Formula, out: &mut String) {
    out.push('(');
    formula(f, true, out);
    out.push(')');
}

fn quant_kw(q: Quantifier, out: &mut String) {
    out.push_str(match q {
        Quantifier::Forall => "A ",
        Quantifier::Exists => "E ",
    });
}

fn atom(a: &Term, b: &Term, out: &mut String) {
    if let (Term::Const(name, args), Term::Numeral(0)) = (a, b) {
        let op = match name.as_str() {
            "le" => Some(" <= "),
            "lt" => Some(" < "),
            _ => None,
        };
        if let (Some(op), [Arg::Term(x), Arg::Term(y)]) = (op, args.as_slice()) {
            term(x, 0, out);
            out.push_str(op);
            term(y, 0, out);
            return;
        }
    }
    term(a, 0, out);
    out.push_str(" = ");
    term(b, 0, out);
}

fn infix(t: &Term) -> Option<(u8, &'static str, &Term, &Term)> {
    if let Term::Const(name, args) = t {
        if let [Arg::Term(x), Arg::Term(y)] = args.as_slice() {
            return match name.as_str() {
                "add" => Some((1, " + ", x, y)),
                "mul" => Some((2, " * ", x, y)),
                _ => None,
            };
        }
    }
    None
}

fn term(t: &Term, ctx: u8, out: &mut String) {
    if let Some((p, op, x, y)) = infix(t) {
        let wrap = p < ctx;
        if wrap {
            out.push('(');
        }
        term(x, p, out);
        out.push_str(op);
        term(y, p + 1, out);
        if wrap {
            out.push(')');
        }
        return;
    }
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Numeral(n) => out.push_str(&n.to_string()),
        Term::Const(name, args) => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                arg(a, out);
            }
            out.push(')');
        }
        Term::Apply(f, x) => {
            match f.as_ref() {
                Functor::Var(v) => {
                    out.push('$');
                    out.push_str(v);
                }
                lam @ Functor::Lambda(..) => {
                    out.push('(');
                    functor(lam, out);
                    out.push(')');
                }
            }
            out.push('(');
            term(x, 0, out);
            out.push(')');
        }
    }
}

fn functor(f: &Functor, out: &mut String) {
    match f {
        Functor::Var(v) => {
            out.push('$');
            out.push_str(v);
        }
        Functor::Lambda(v, body) => {
            out.push('\\');
            out.push_str(v);
            out.push_str(". ");
            term(body, 0, out);
        }
    }
}

fn arg(a: &Arg, out: &mut String) {
    match a {
        Arg::Term(t) => term(t, 0, out),
        Arg::Functor(f) => functor(f, out),
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse;

    fn canon(s: &str) -> String {
        super::print(&parse(s).unwrap())
    }

    #[test]
    fn sigma01_dns0_prints_canonically() {
        let s = "A $a. (A x. ~~E y. $a(pair(x, y)) = 0) -> ~~A x. E y. $a(pair(x, y)) = 0";
        assert_eq!(canon(s), s);
    }

    #[test]
    fn quantifiers_left_of_connectives_are_parenthesised() {
        assert_eq!(canon("(A x. x = x) & 0 = 0"), "(A x. x = x) & 0 = 0");
        assert_eq!(canon("0 = 0 & A x. x = x"), "0 = 0 & A x. x = x");
        assert_eq!(canon("(0 = 0 & (A x. x = x)) -> 0 = 0"), "0 = 0 & (A x. x = x) -> 0 = 0");
        assert_eq!(canon("~(A x. ~$a(x) = 0) -> E x. $a(x) = 0"), "(~A x. ~$a(x) = 0) -> E x. $a(x) = 0");
    }

    #[test]
    fn associativity() {
        assert_eq!(canon("(a = b -> c = d) -> e = f"), "(a = b -> c = d) -> e = f");
        assert_eq!(canon("a = b -> (c = d -> e = f)"), "a = b -> c = d -> e = f");
        assert_eq!(canon("(a = b <-> c = d) <-> e = f"), "(a = b <-> c = d) <-> e = f");
        assert_eq!(canon("a = b <-> (c = d <-> e = f)"), "a = b <-> (c = d <-> e = f)");
        assert_eq!(canon("x + (y + z) = (x * y) * z"), "x + (y + z) = x * y * z");
    }

    #[test]
    fn sugar_is_kept() {
        assert_eq!(canon("A $a | (A x. $a(x) <= 1). 0 = 0"), "A $a | (A x. $a(x) <= 1). 0 = 0");
        assert_eq!(canon("E x < n. ~x = 0"), "E x < n. ~x = 0");
        assert_eq!(canon("A y. (\\x. x + 1)(y) = suc(y)"), "A y. (\\x. x + 1)(y) = suc(y)");
    }
}
