//! Stability proofs: for a negative formula `F`, a script proving
//! `~~F <-> F` in IA1.

use thiserror::Error;

use crate::syntax::{normalize_for_kernel, print, Arg, Formula, Functor, Quantifier, Term, Var};
use crate::translate::is_negative;

use super::builder::*;
use super::lemmas::cite;
use super::Script;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("`{0}` is not negative")]
    NotNegative(String),
    #[error("`{0}` contains formula metavariables")]
    Schematic(String),
    #[error("proof construction failed: {0}")]
    Build(String),
}

fn var_arg(v: &Var) -> Arg {
    match v {
        Var::Num(n) => Arg::Term(Term::var(n.clone())),
        Var::Seq(n) => Arg::Functor(Functor::Var(n.clone())),
    }
}

/// A closed proof of `~~f -> f` for a normalized negative `f`.
fn stab(f: &Formula) -> BuildResult {
    match f {
        Formula::Eq(s, t) => {
            let e = cite("eq-stab", &[])?;
            all_elim(&all_elim(&e, &Arg::Term(s.clone()))?, &Arg::Term(t.clone()))
        }
        Formula::Not(a) => cite("tn-elim", &[("A", a)]),
        Formula::And(a, b) => {
            let h = not(&not(f));
            let d = mp(&hyp(&h), &cite("dn-and", &[("A", a), ("B", b)])?)?;
            let l = mp(&and_l(&d)?, &stab(a)?)?;
            let r = mp(&and_r(&d)?, &stab(b)?)?;
            discharge(&h, &and_intro(&l, &r)?)
        }
        Formula::Imp(a, b) => {
            let h = not(&not(f));
            let nn_a = mp(&hyp(a), &cite("dn-intro", &[("A", a)])?)?;
            let nn_b = mp(&nn_a, &mp(&hyp(&h), &cite("dn-imp", &[("A", a), ("B", b)])?)?)?;
            let body = mp(&nn_b, &stab(b)?)?;
            discharge(&h, &discharge(a, &body)?)
        }
        Formula::Quant(Quantifier::Forall, v, a) => {
            let h = not(&not(f));
            let nn_a = mp(&hyp(&h), &dn_mono(&all_elim_ax(f, &var_arg(v))?)?)?;
            discharge(&h, &gen(&mp(&nn_a, &stab(a)?)?, v))
        }
        other => Err(format!("unexpected connective in `{}`", print(other))),
    }
}

/// A script proving `~~f <-> f` in IA1.
pub fn stability_script(f: &Formula) -> Result<Script, StabilityError> {
    if !f.metavariables().is_empty() {
        return Err(StabilityError::Schematic(print(f)));
    }
    if !is_negative(f) {
        return Err(StabilityError::NotNegative(print(f)));
    }
    let n = normalize_for_kernel(f);
    let build = || -> BuildResult { and_intro(&stab(&n)?, &cite("dn-intro", &[("A", &n)])?) };
    let pf = build().map_err(StabilityError::Build)?;
    let goal = Formula::iff(not(&not(f)), f.clone());
    compile(&pf, "IA1", &goal).map_err(StabilityError::Build)
}
