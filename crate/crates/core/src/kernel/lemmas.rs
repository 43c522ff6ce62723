//! The built-in lemma library. Each lemma is produced by the proof builder
//! and stored as a script under `data/lemmas`; a test keeps the two in sync.

use crate::catalog::Catalog;
use crate::syntax::{parse, parse_term, Arg, Formula, Var};

use super::builder::*;
use super::Script;

macro_rules! lemma_file {
    ($name:literal) => {
        ($name, include_str!(concat!("../../data/lemmas/", $name, ".proof")))
    };
}

/// Lemma names and script texts, in dependency order.
pub const LEMMA_SOURCES: &[(&str, &str)] = &[
    lemma_file!("imp-refl"),
    lemma_file!("dn-intro"),
    lemma_file!("tn-elim"),
    lemma_file!("dn-and"),
    lemma_file!("dn-imp"),
    lemma_file!("dn-all"),
    lemma_file!("eq-sym"),
    lemma_file!("eq-dec"),
    lemma_file!("eq-stab"),
];

#[cfg(test)]
const HEADER: &str = "# Generated by kernel::generate_lemmas. Regenerate with NEGINT_BLESS=1 cargo test.\n";

fn f(s: &str) -> Formula {
    parse(s).expect("lemma formula parses")
}

fn t(s: &str) -> Arg {
    Arg::Term(parse_term(s).expect("lemma term parses"))
}

fn x() -> Var {
    Var::num("x")
}

fn y() -> Var {
    Var::num("y")
}

/// Lemma goals, used to cite a lemma before its script exists.
pub(crate) const LEMMA_GOALS: &[(&str, &str)] = &[
    ("imp-refl", "?A -> ?A"),
    ("dn-intro", "?A -> ~~?A"),
    ("tn-elim", "~~~?A -> ~?A"),
    ("dn-and", "~~(?A & ?B) -> ~~?A & ~~?B"),
    ("dn-imp", "~~(?A -> ?B) -> ~~?A -> ~~?B"),
    ("dn-all", "(~~A x. ?A(x)) -> A x. ~~?A(x)"),
    ("eq-sym", "A x. A y. x = y -> y = x"),
    ("eq-dec", "A x. A y. x = y \\/ ~x = y"),
    ("eq-stab", "A x. A y. ~~x = y -> x = y"),
];

/// A lemma citation with its goal instantiated by `binds`.
pub(crate) fn cite(name: &str, binds: &[(&str, &Formula)]) -> BuildResult {
    let (_, goal) = LEMMA_GOALS.iter().find(|(n, _)| *n == name).ok_or(format!("unknown lemma {name}"))?;
    let goal = parse(goal).map_err(|e| e.to_string())?;
    // Unbound propositional metas are bound to themselves so that the
    // citation is rewritten when an enclosing lemma is instantiated.
    let mut b = Vec::new();
    for (m, arity) in goal.metavariables() {
        match binds.iter().find(|(n, _)| *n == m) {
            Some((_, body)) => b.push(bind(&m, body)),
            None if arity == 0 => b.push(format!("?{m} := ?{m}")),
            None => return Err(format!("lemma {name} needs a binding for ?{m}")),
        }
    }
    let parsed = crate::catalog::Bindings::parse(&b).map_err(|e| e.to_string())?;
    let concl = crate::catalog::apply_meta_bindings(&goal, &parsed).map_err(|e| e.to_string())?;
    Ok(lemma(name, b, concl))
}

fn imp_refl_lemma() -> BuildResult {
    imp_refl(&f("?A"))
}

fn dn_intro() -> BuildResult {
    let a = f("?A");
    discharge(&a, &neg_intro(&not(&a), &hyp(&a), &hyp(&not(&a)))?)
}

fn tn_elim() -> BuildResult {
    let a = f("?A");
    let h = f("~~~?A");
    let nn = mp(&hyp(&a), &cite("dn-intro", &[])?)?;
    discharge(&h, &neg_intro(&a, &nn, &hyp(&h))?)
}

fn dn_and() -> BuildResult {
    let h = f("~~(?A & ?B)");
    let l = dn_mono(&logical("and-l", f("?A & ?B -> ?A")))?;
    let r = dn_mono(&logical("and-r", f("?A & ?B -> ?B")))?;
    discharge(&h, &and_intro(&mp(&hyp(&h), &l)?, &mp(&hyp(&h), &r)?)?)
}

fn dn_imp() -> BuildResult {
    let (a, b) = (f("?A"), f("?B"));
    let ab = imp(&a, &b);
    let not_a = neg_intro(&a, &mp(&hyp(&a), &hyp(&ab))?, &hyp(&not(&b)))?;
    let not_ab = neg_intro(&ab, &not_a, &hyp(&f("~~?A")))?;
    let nn_b = neg_intro(&not(&b), &not_ab, &hyp(&f("~~(?A -> ?B)")))?;
    discharge(&f("~~(?A -> ?B)"), &discharge(&f("~~?A"), &nn_b)?)
}

fn dn_all() -> BuildResult {
    let inst = all_elim_ax(&f("A x. ?A(x)"), &t("x"))?;
    cond_gen(&dn_mono(&inst)?, &x())
}

fn eq_sym() -> BuildResult {
    let h = f("x = y");
    let repl = logical("eq-repl", f("x = y -> x = x -> y = x"));
    let yx = mp(&refl(&parse_term("x").unwrap()), &mp(&hyp(&h), &repl)?)?;
    Ok(gen(&gen(&discharge(&h, &yx)?, &y()), &x()))
}

/// `s = t` gives `t = s`.
fn sym(p: &Pf, s: &str, t_: &str) -> BuildResult {
    mp(p, &all_elim(&all_elim(&cite("eq-sym", &[])?, &t(s))?, &t(t_))?)
}

fn eq_dec(cat: &Catalog) -> BuildResult {
    let zero_ne_suc = axiom(&f("A x. ~suc(x) = 0"));
    let inj = axiom(&f("A x. A y. suc(x) = suc(y) -> x = y"));

    // A y. 0 = y \/ ~0 = y
    let base_inst = schema(cat, "IND", &["rename x := y", "?A(y) := 0 = y \\/ ~0 = y"])?;
    let base0 = or_l(&refl(&parse_term("0").unwrap()), &f("~0 = 0"))?;
    let h0 = f("0 = suc(y)");
    let ne = neg_intro(&h0, &sym(&hyp(&h0), "0", "suc(y)")?, &all_elim(&zero_ne_suc, &t("y"))?)?;
    let step0 = k_lift(&or_r(&ne, &h0)?, &f("0 = y \\/ ~0 = y"))?;
    let base = mp(&and_intro(&base0, &gen(&step0, &y()))?, &base_inst)?;

    // Under H = A y. x = y \/ ~x = y, prove A y. suc(x) = y \/ ~suc(x) = y.
    let hx = f("A y. x = y \\/ ~x = y");
    let q = f("suc(x) = y \\/ ~suc(x) = y");
    let inner_inst = schema(cat, "IND", &["rename x := y", "?A(y) := suc(x) = y \\/ ~suc(x) = y"])?;
    let inner0 = or_r(&all_elim(&zero_ne_suc, &t("x"))?, &f("suc(x) = 0"))?;
    let same = f("x = y");
    let ss = f("suc(x) = suc(y)");
    let repl = logical("eq-repl", f("x = y -> suc(x) = suc(x) -> suc(x) = suc(y)"));
    let left = discharge(&same, &or_l(&mp(&refl(&parse_term("suc(x)").unwrap()), &mp(&hyp(&same), &repl)?)?, &not(&ss))?)?;
    let inj_xy = all_elim(&all_elim(&inj, &t("x"))?, &t("y"))?;
    let ne_ss = neg_intro(&ss, &mp(&hyp(&ss), &inj_xy)?, &hyp(&not(&same)))?;
    let right = discharge(&not(&same), &or_r(&ne_ss, &ss)?)?;
    let qs = or_elim(&all_elim(&hyp(&hx), &t("y"))?, &left, &right)?;
    let inner_step = gen(&k_lift(&qs, &q)?, &y());
    let inner = mp(&and_intro(&inner0, &inner_step)?, &inner_inst)?;
    let outer_step = gen(&discharge(&hx, &inner)?, &x());

    let outer_inst = schema(cat, "IND", &["?A(x) := A y. x = y \\/ ~x = y"])?;
    mp(&and_intro(&base, &outer_step)?, &outer_inst)
}

fn eq_stab() -> BuildResult {
    let h = f("~~x = y");
    let same = f("x = y");
    let dec = all_elim(&all_elim(&cite("eq-dec", &[])?, &t("x"))?, &t("y"))?;
    let absurd = discharge(&not(&same), &ex_falso(&hyp(&not(&same)), &hyp(&h), &same)?)?;
    let body = or_elim(&dec, &imp_refl(&same)?, &absurd)?;
    Ok(gen(&gen(&discharge(&h, &body)?, &y()), &x()))
}

/// Builds every built-in lemma from scratch.
pub fn generate_lemmas() -> Vec<(String, Script)> {
    let cat = Catalog::standard();
    let build: Vec<(&str, &str, BuildResult)> = vec![
        ("imp-refl", "PL", imp_refl_lemma()),
        ("dn-intro", "PL", dn_intro()),
        ("tn-elim", "PL", tn_elim()),
        ("dn-and", "PL", dn_and()),
        ("dn-imp", "PL", dn_imp()),
        ("dn-all", "PL", dn_all()),
        ("eq-sym", "PL", eq_sym()),
        ("eq-dec", "IA1", eq_dec(cat)),
        ("eq-stab", "IA1", eq_stab()),
    ];
    build
        .into_iter()
        .map(|(name, theory, pf)| {
            let pf = pf.unwrap_or_else(|e| panic!("building lemma {name}: {e}"));
            let goal = LEMMA_GOALS.iter().find(|(n, _)| *n == name).map(|(_, g)| f(g)).expect("lemma goal");
            let script = compile(&pf, theory, &goal).unwrap_or_else(|e| panic!("compiling lemma {name}: {e}"));
            (name.to_string(), script)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Kernel;

    #[test]
    fn stored_lemmas_match_the_generator() {
        let bless = std::env::var_os("NEGINT_BLESS").is_some();
        let generated = generate_lemmas();
        assert_eq!(generated.len(), LEMMA_SOURCES.len());
        for ((name, script), (stored_name, stored)) in generated.iter().zip(LEMMA_SOURCES) {
            assert_eq!(name, stored_name);
            let text = format!("{HEADER}{script}");
            if bless {
                let path = format!("{}/data/lemmas/{name}.proof", env!("CARGO_MANIFEST_DIR"));
                std::fs::write(path, &text).unwrap();
            } else {
                assert_eq!(&text, stored, "lemma {name} is stale; rerun with NEGINT_BLESS=1");
            }
        }
    }

    #[test]
    fn every_lemma_checks() {
        let k = Kernel::standard();
        for (name, _) in LEMMA_SOURCES {
            let script = k.lemma(name).unwrap();
            let j = k.check(script).unwrap();
            assert!(j.is_checked(), "{name}: {j}");
        }
    }

    #[test]
    fn lemma_goals() {
        let k = Kernel::standard();
        for (name, goal) in LEMMA_GOALS {
            assert_eq!(crate::syntax::print(&k.lemma(name).unwrap().goal), *goal);
        }
    }
}
