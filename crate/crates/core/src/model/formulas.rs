//! The definitions of ρ and of the inductive predicate A(w) as formulas,
//! shared by proof scripts and bounded evaluation.

use crate::syntax::{parse, substitute, Formula, SubstMode, Term, Var};

fn build(template: &str, w: &Term, alpha: &str) -> Formula {
    let f = parse(&template.replace("$a", &format!("${alpha}"))).expect("built-in template parses");
    substitute(&f, &Var::num("w"), &w.clone().into(), SubstMode::Rename).expect("renaming substitution succeeds")
}

const CLAUSE_D: &str = "proj(w, j) = 1 & E y < lh(w). $a(pair(j, y)) != 0";
const CLAUSE_E: &str =
    "1 < proj(w, j) & ($a(pair(j, monus(proj(w, j), 2))) = 0 \\/ E y < monus(proj(w, j), 2). $a(pair(j, y)) != 0)";
const A_MATRIX: &str = "E j < lh(w). (proj(w, j) = 1 -> ~A y. $a(pair(j, y)) = 0) & \
    (1 < proj(w, j) -> $a(pair(j, monus(proj(w, j), 2))) != 0 -> E y < monus(proj(w, j), 2). $a(pair(j, y)) != 0)";

/// `ρ(w) = 0` spelled out: `Seq(w)` and clause (d) or (e) for some `j < lh(w)`.
pub fn rho_formula(w: &Term, alpha: &str) -> Formula {
    build(&format!("seq(w) = 0 & E j < lh(w). ({CLAUSE_D}) \\/ ({CLAUSE_E})"), w, alpha)
}

/// The inductive predicate `A(w)`, a double negation over [`a_predicate_matrix`].
pub fn a_predicate(w: &Term, alpha: &str) -> Formula {
    Formula::not(Formula::not(a_predicate_matrix(w, alpha)))
}

/// `A(w)` without its outer `~~`, which is classically transparent.
pub fn a_predicate_matrix(w: &Term, alpha: &str) -> Formula {
    build(A_MATRIX, w, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{eval_bounded, make_rho, Profile, Truth};
    use crate::oracle::{Env, SequenceOracle};
    use crate::syntax::free_vars;
    use num_bigint::BigUint;

    fn env(alpha: SequenceOracle) -> Env {
        Env::from([("a".to_string(), alpha)])
    }

    #[test]
    fn rho_formula_agrees_with_the_construction() {
        for alpha in [SequenceOracle::constant(0), SequenceOracle::table([(1, 1)], 0), SequenceOracle::table([(3, 1), (2, 1)], 0)] {
            let rho = make_rho(alpha.clone());
            let e = env(alpha);
            for w in 0..200u64 {
                let f = rho_formula(&Term::Numeral(w), "a");
                let t = eval_bounded(&f, &e, &Profile::with_bound(0)).unwrap().truth;
                assert_eq!(t == Truth::True, rho.at(&BigUint::from(w)) == 0, "w = {w}");
                assert_ne!(t, Truth::Unknown);
            }
        }
    }

    #[test]
    fn a_predicate_shape() {
        let w = Term::var("j");
        let a = a_predicate(&w, "b");
        assert!(matches!(&a, Formula::Not(inner) if matches!(inner.as_ref(), Formula::Not(_))));
        let fv = free_vars(&a);
        assert!(fv.num.contains("j") && fv.seq.contains("b"));
        // Bound `j` was renamed away from the substituted `j`.
        assert_eq!(fv.num.len(), 1);
    }

    #[test]
    fn a_matrix_evaluation() {
        let e = env(SequenceOracle::constant(0));
        let p = Profile::with_bound(20);
        let at = |w: u64| eval_bounded(&a_predicate_matrix(&Term::Numeral(w), "a"), &e, &p).unwrap().truth;
        assert_eq!(at(4), Truth::True);
        // The universal over y is never certified.
        assert_eq!(at(2), Truth::Unknown);
        let e = env(SequenceOracle::table([(1, 1)], 0));
        let at = |w: u64| eval_bounded(&a_predicate_matrix(&Term::Numeral(w), "a"), &e, &p).unwrap().truth;
        assert_eq!(at(2), Truth::True);
    }
}
