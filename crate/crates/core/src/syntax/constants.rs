//! Declared constants of the language: primitive recursive function(al)s
//! with their sorts, optional defining equations and executable hooks.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::Sort;

/// Executable semantics for a constant. Constants without one (Kleene's
/// `T` and `U`) are uninterpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Suc,
    Add,
    Mul,
    Pred,
    Monus,
    Sg,
    Le,
    Lt,
    Pow,
    Pair,
    One,
    Prime,
    Proj,
    Lh,
    Seq,
    Cat,
    Bar,
}

#[derive(Clone, Debug)]
pub struct ConstantDecl {
    pub args: Vec<Sort>,
    /// Defining equations in surface syntax (closed formulas).
    pub defining: Vec<&'static str>,
    pub hook: Option<Builtin>,
}

/// Map from constant id to declaration. Ids are unique by construction.
#[derive(Clone, Debug)]
pub struct ConstantTable {
    decls: BTreeMap<String, ConstantDecl>,
}

impl ConstantTable {
    pub fn empty() -> Self {
        ConstantTable { decls: BTreeMap::new() }
    }

    /// The standard table shared by every theory in the catalog.
    pub fn standard() -> &'static ConstantTable {
        static TABLE: OnceLock<ConstantTable> = OnceLock::new();
        TABLE.get_or_init(build_standard)
    }

    /// Registers a constant. Returns `false` and leaves the table unchanged
    /// if the id is already taken.
    pub fn declare(&mut self, id: &str, decl: ConstantDecl) -> bool {
        if self.decls.contains_key(id) {
            return false;
        }
        self.decls.insert(id.to_string(), decl);
        true
    }

    pub fn get(&self, id: &str) -> Option<&ConstantDecl> {
        self.decls.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ConstantDecl)> {
        self.decls.iter()
    }

    /// Every defining equation of every constant, in id order.
    pub fn defining_axioms(&self) -> Vec<&'static str> {
        self.decls.values().flat_map(|d| d.defining.iter().copied()).collect()
    }
}

fn build_standard() -> ConstantTable {
    use Builtin::*;
    use Sort::Num;
    let mut t = ConstantTable::empty();
    let mut decl = |id: &str, args: Vec<Sort>, defining: Vec<&'static str>, hook: Option<Builtin>| {
        let fresh = t.declare(id, ConstantDecl { args, defining, hook });
        debug_assert!(fresh, "duplicate constant {id}");
    };
    decl("suc", vec![Num], vec![], Some(Suc));
    decl("add", vec![Num, Num], vec![
        "A x. add(x, 0) = x",
        "A x. A y. add(x, suc(y)) = suc(add(x, y))",
    ], Some(Add));
    decl("mul", vec![Num, Num], vec![
        "A x. mul(x, 0) = 0",
        "A x. A y. mul(x, suc(y)) = add(mul(x, y), x)",
    ], Some(Mul));
    decl("pred", vec![Num], vec!["pred(0) = 0", "A x. pred(suc(x)) = x"], Some(Pred));
    decl("monus", vec![Num, Num], vec![
        "A x. monus(x, 0) = x",
        "A x. A y. monus(x, suc(y)) = pred(monus(x, y))",
    ], Some(Monus));
    decl("sg", vec![Num], vec!["A x. sg(x) = monus(1, monus(1, x))"], Some(Sg));
    decl("le", vec![Num, Num], vec!["A x. A y. le(x, y) = sg(monus(x, y))"], Some(Le));
    decl("lt", vec![Num, Num], vec!["A x. A y. lt(x, y) = sg(monus(suc(x), y))"], Some(Lt));
    decl("pow", vec![Num, Num], vec![
        "A x. pow(x, 0) = 1",
        "A x. A y. pow(x, suc(y)) = mul(pow(x, y), x)",
    ], Some(Pow));
    decl("pair", vec![Num, Num], vec!["A x. A y. pair(x, y) = mul(pow(2, x), pow(3, y))"], Some(Pair));
    decl("one", vec![Num], vec!["A x. one(x) = pow(2, x)"], Some(One));
    decl("prime", vec![Num], vec![], Some(Prime));
    decl("proj", vec![Num, Num], vec![], Some(Proj));
    decl("lh", vec![Num], vec![], Some(Lh));
    decl("seq", vec![Num], vec![], Some(Seq));
    decl("cat", vec![Num, Num], vec![], Some(Cat));
    decl("bar", vec![Sort::Seq, Num], vec![], Some(Bar));
    decl("kleene_t", vec![Num, Num, Num], vec![], None);
    decl("kleene_u", vec![Num], vec![], None);
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_predicates_are_uninterpreted() {
        let t = ConstantTable::standard();
        assert!(t.get("kleene_t").unwrap().hook.is_none());
        assert!(t.get("kleene_u").unwrap().hook.is_none());
        assert_eq!(t.get("bar").unwrap().args, vec![Sort::Seq, Sort::Num]);
    }

    #[test]
    fn ids_are_unique() {
        let mut t = ConstantTable::standard().clone();
        let dup = ConstantDecl { args: vec![], defining: vec![], hook: None };
        assert!(!t.declare("pair", dup));
    }

    #[test]
    fn defining_axioms_parse() {
        for ax in ConstantTable::standard().defining_axioms() {
            crate::syntax::parse(ax).unwrap_or_else(|e| panic!("{ax}: {e}"));
        }
    }
}
