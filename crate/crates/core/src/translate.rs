//! The Gödel–Gentzen negative translation and syntactic-class recognizers.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{desugar, sugar, Formula, Quantifier, Var};

/// How atomic formulas are treated by the translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AtomPolicy {
    /// Atoms are left unchanged.
    #[default]
    Identity,
    /// Atoms are double-negated.
    Strict,
}

impl std::str::FromStr for AtomPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "identity" => Ok(AtomPolicy::Identity),
            "strict" => Ok(AtomPolicy::Strict),
            other => Err(format!("unknown atom policy `{other}` (expected identity or strict)")),
        }
    }
}

/// Syntactic classes used by schema restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SyntacticClass {
    Negative,
    QuantifierFree,
    Arithmetical,
    Sigma01,
    Pi01,
    Pi11,
    NoneOfThese,
}

impl SyntacticClass {
    pub const ALL: [SyntacticClass; 7] = [
        SyntacticClass::Negative,
        SyntacticClass::QuantifierFree,
        SyntacticClass::Arithmetical,
        SyntacticClass::Sigma01,
        SyntacticClass::Pi01,
        SyntacticClass::Pi11,
        SyntacticClass::NoneOfThese,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SyntacticClass::Negative => "negative",
            SyntacticClass::QuantifierFree => "quantifier_free",
            SyntacticClass::Arithmetical => "arithmetical",
            SyntacticClass::Sigma01 => "sigma01",
            SyntacticClass::Pi01 => "pi01",
            SyntacticClass::Pi11 => "pi11",
            SyntacticClass::NoneOfThese => "none_of_these",
        }
    }
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SyntacticClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SyntacticClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown syntactic class `{s}`"))
    }
}

/// The negative translation `g`. Bounded, relativized and unique
/// quantifiers are desugared first; biconditionals are kept as nodes.
pub fn negative_translate(f: &Formula, policy: AtomPolicy) -> Formula {
    g(&desugar(f), policy)
}

fn g(f: &Formula, policy: AtomPolicy) -> Formula {
    match f {
        Formula::Eq(..) => match policy {
            AtomPolicy::Identity => f.clone(),
            AtomPolicy::Strict => Formula::not(Formula::not(f.clone())),
        },
        Formula::Meta(..) => f.clone(),
        Formula::Not(a) => Formula::not(g(a, policy)),
        Formula::And(a, b) => Formula::and(g(a, policy), g(b, policy)),
        Formula::Imp(a, b) => Formula::imp(g(a, policy), g(b, policy)),
        Formula::Iff(a, b) => Formula::iff(g(a, policy), g(b, policy)),
        Formula::Or(a, b) => Formula::not(Formula::and(Formula::not(g(a, policy)), Formula::not(g(b, policy)))),
        Formula::Quant(Quantifier::Forall, v, body) => Formula::forall(v.clone(), g(body, policy)),
        Formula::Quant(Quantifier::Exists, v, body) => {
            Formula::not(Formula::forall(v.clone(), Formula::not(g(body, policy))))
        }
        Formula::Bounded { .. } | Formula::Relativized { .. } | Formula::Unique(..) => {
            g(&desugar(f), policy)
        }
    }
}

/// Rewrites every run of `k >= 3` negations to `k - 2` negations, so
/// that `~~~A` becomes `~A`.
pub fn collapse_triple_negation(f: &Formula) -> Formula {
    match f {
        Formula::Not(_) => {
            let mut depth = 0;
            let mut inner = f;
            while let Formula::Not(a) = inner {
                depth += 1;
                inner = a;
            }
            let keep = if depth % 2 == 1 { 1 } else { 2 };
            let mut out = collapse_triple_negation(inner);
            for _ in 0..keep {
                out = Formula::not(out);
            }
            out
        }
        Formula::Eq(..) | Formula::Meta(..) => f.clone(),
        Formula::And(a, b) => Formula::and(collapse_triple_negation(a), collapse_triple_negation(b)),
        Formula::Or(a, b) => Formula::or(collapse_triple_negation(a), collapse_triple_negation(b)),
        Formula::Imp(a, b) => Formula::imp(collapse_triple_negation(a), collapse_triple_negation(b)),
        Formula::Iff(a, b) => Formula::iff(collapse_triple_negation(a), collapse_triple_negation(b)),
        Formula::Quant(q, v, b) => Formula::Quant(*q, v.clone(), Box::new(collapse_triple_negation(b))),
        Formula::Bounded { q, var, rel, bound, body } => Formula::Bounded {
            q: *q,
            var: var.clone(),
            rel: *rel,
            bound: bound.clone(),
            body: Box::new(collapse_triple_negation(body)),
        },
        Formula::Relativized { q, var, guard, body } => Formula::Relativized {
            q: *q,
            var: var.clone(),
            guard: Box::new(collapse_triple_negation(guard)),
            body: Box::new(collapse_triple_negation(body)),
        },
        Formula::Unique(v, b) => Formula::Unique(v.clone(), Box::new(collapse_triple_negation(b))),
    }
}

/// True iff `f` contains neither `\/` nor `E`, counting the existentials
/// hidden in bounded, relativized and unique quantifiers.
pub fn is_negative(f: &Formula) -> bool {
    match f {
        Formula::Eq(..) | Formula::Meta(..) => true,
        Formula::Or(..) | Formula::Unique(..) => false,
        Formula::Quant(Quantifier::Exists, ..)
        | Formula::Bounded { q: Quantifier::Exists, .. }
        | Formula::Relativized { q: Quantifier::Exists, .. } => false,
        Formula::Not(a) => is_negative(a),
        Formula::And(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => is_negative(a) && is_negative(b),
        Formula::Quant(Quantifier::Forall, _, body) | Formula::Bounded { body, .. } => is_negative(body),
        Formula::Relativized { guard, body, .. } => is_negative(guard) && is_negative(body),
    }
}

/// No sequence quantifiers and only bounded number quantifiers.
fn quantifier_free(f: &Formula) -> bool {
    match f {
        Formula::Eq(..) | Formula::Meta(..) => true,
        Formula::Quant(..) | Formula::Relativized { .. } | Formula::Unique(..) => false,
        Formula::Bounded { body, .. } => quantifier_free(body),
        Formula::Not(a) => quantifier_free(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            quantifier_free(a) && quantifier_free(b)
        }
    }
}

/// Only number quantifiers.
fn arithmetical(f: &Formula) -> bool {
    match f {
        Formula::Eq(..) | Formula::Meta(..) => true,
        Formula::Quant(_, Var::Seq(_), _) | Formula::Relativized { .. } => false,
        Formula::Quant(_, Var::Num(_), body) | Formula::Bounded { body, .. } | Formula::Unique(_, body) => {
            arithmetical(body)
        }
        Formula::Not(a) => arithmetical(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            arithmetical(a) && arithmetical(b)
        }
    }
}

fn prime(f: &Formula) -> bool {
    matches!(f, Formula::Eq(..))
}

fn sigma01(f: &Formula) -> bool {
    matches!(f, Formula::Quant(Quantifier::Exists, Var::Num(_), body) if prime(body))
}

fn pi01(f: &Formula) -> bool {
    matches!(f, Formula::Quant(Quantifier::Forall, Var::Num(_), body) if prime(body))
}

fn pi11(f: &Formula) -> bool {
    matches!(f, Formula::Quant(Quantifier::Forall, Var::Seq(_), body) if sigma01(body))
}

/// Every class `f` belongs to; `NoneOfThese` exactly when no other applies.
pub fn classify(f: &Formula) -> BTreeSet<SyntacticClass> {
    let s = sugar(f, &[]);
    let mut out = BTreeSet::new();
    if is_negative(f) {
        out.insert(SyntacticClass::Negative);
    }
    if quantifier_free(&s) {
        out.insert(SyntacticClass::QuantifierFree);
    }
    if arithmetical(f) {
        out.insert(SyntacticClass::Arithmetical);
    }
    if sigma01(f) {
        out.insert(SyntacticClass::Sigma01);
    }
    if pi01(f) {
        out.insert(SyntacticClass::Pi01);
    }
    if pi11(f) {
        out.insert(SyntacticClass::Pi11);
    }
    if out.is_empty() {
        out.insert(SyntacticClass::NoneOfThese);
    }
    out
}

/// Membership test for a single class.
pub fn in_class(f: &Formula, class: SyntacticClass) -> bool {
    classify(f).contains(&class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, parse, print};
    use SyntacticClass::*;

    fn tr(s: &str) -> String {
        print(&negative_translate(&parse(s).unwrap(), AtomPolicy::Identity))
    }

    #[test]
    fn excluded_middle_instance() {
        assert_eq!(
            tr("A x. (A y. $a(pair(x, y)) = 0) \\/ ~A y. $a(pair(x, y)) = 0"),
            "A x. ~((~A y. $a(pair(x, y)) = 0) & ~~A y. $a(pair(x, y)) = 0)"
        );
    }

    #[test]
    fn comprehension_instance() {
        assert_eq!(
            tr("E $b. A x. ($b(x) = 0 <-> A y. $a(pair(x, y)) = 0)"),
            "~A $b. ~A x. $b(x) = 0 <-> A y. $a(pair(x, y)) = 0"
        );
    }

    #[test]
    fn markov_principle_becomes_an_identity() {
        assert_eq!(
            tr("A $a. ~(A x. ~$a(x) = 0) -> E x. $a(x) = 0"),
            "A $a. (~A x. ~$a(x) = 0) -> ~A x. ~$a(x) = 0"
        );
    }

    #[test]
    fn negative_formulas_are_fixed() {
        let f = parse("A x. ~~$a(x) = 0 -> (A $b. $b(x) = x & 0 = 0)").unwrap();
        assert_eq!(negative_translate(&f, AtomPolicy::Identity), f);
    }

    #[test]
    fn strict_policy_double_negates_atoms() {
        assert_eq!(
            print(&negative_translate(&parse("x = 0 \\/ 0 = x").unwrap(), AtomPolicy::Strict)),
            "~(~~~x = 0 & ~~~0 = x)"
        );
    }

    #[test]
    fn bounded_sugar_is_desugared() {
        assert_eq!(tr("E x < 3. x = x"), "~A x. ~(x < 3 & x = x)");
        assert_eq!(tr("A x <= 3. x = x"), "A x. x <= 3 -> x = x");
    }

    #[test]
    fn collapse_runs() {
        let f = parse("~~~~~x = 0 & ~~~~y = 0").unwrap();
        assert_eq!(print(&collapse_triple_negation(&f)), "~x = 0 & ~~y = 0");
    }

    #[test]
    fn negativity() {
        assert!(!is_negative(&parse("A x. ~~E $z. A y. ($z(y) = 0 <-> y = x)").unwrap()));
        assert!(is_negative(&parse("A y. $a(pair(x, y)) = 0").unwrap()));
        assert!(!is_negative(&parse("E x < 3. x = x").unwrap()));
        assert!(!is_negative(&desugar(&parse("E x < 3. x = x").unwrap())));
    }

    #[test]
    fn classes() {
        let set = |s: &str| classify(&parse(s).unwrap()).into_iter().collect::<Vec<_>>();
        assert_eq!(set("A y. $a(pair(x, y)) = 0"), vec![Negative, Arithmetical, Pi01]);
        assert_eq!(set("$a(x) = 0 \\/ $a(x) = 1"), vec![QuantifierFree, Arithmetical]);
        assert_eq!(set("A $a. E y. $g(bar($a, pair(x, y))) = 0"), vec![Pi11]);
        assert_eq!(set("E y. $a(y) = 0"), vec![Arithmetical, Sigma01]);
        assert_eq!(set("A x < y. $a(x) = 0"), vec![Negative, QuantifierFree, Arithmetical]);
        assert_eq!(set("E x. E $b. $b(x) = 0 \\/ 0 = 0"), vec![NoneOfThese]);
    }

    #[test]
    fn desugared_bounds_still_count_as_quantifier_free() {
        let f = desugar(&parse("A x < y. E z <= x. $a(z) = 0").unwrap());
        assert!(in_class(&f, QuantifierFree));
    }

    #[test]
    fn classification_ignores_bound_names() {
        let a = parse("A $b. E y. $b(y) = 0").unwrap();
        let b = parse("A $c. E z. $c(z) = 0").unwrap();
        assert!(alpha_eq(&a, &b));
        assert_eq!(classify(&a), classify(&b));
    }
}
