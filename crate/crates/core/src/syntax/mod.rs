//! Abstract syntax of the two-sorted language: number terms, functors
//! (type-1 objects) and formulas.
//!
//! Number variables and sequence variables live in separate lexical
//! classes. In surface syntax sequence variables carry a `$` sigil, so
//! `x` is a number variable and `$a` a sequence variable.

pub mod constants;
mod lambda;
mod parse;
mod print;
mod subst;
mod sugar;

use std::fmt;

pub use constants::{Builtin, ConstantDecl, ConstantTable};
pub use lambda::{lambda_reduce, lambda_reduce_innermost, lambda_reduce_with};
pub use parse::{
    parse, parse_arg, parse_formula_with, parse_functor, parse_term, parse_term_with, ParseError,
};
pub use print::{print, print_arg, print_functor, print_term};
pub use subst::{
    alpha_eq, alpha_eq_term, fresh_name, free_vars, free_vars_arg, free_vars_term,
    substitute, substitute_many, substitute_term, variable_names, FreeVars, SubstError,
    SubstMode,
};
pub use sugar::{desugar, expand_iff, expand_unique, normalize_for_kernel, sugar, Guard};

/// The two sorts of the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    /// Type 0: natural numbers.
    Num,
    /// Type 1: one-place number-theoretic functions.
    Seq,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Num => f.write_str("number"),
            Sort::Seq => f.write_str("sequence"),
        }
    }
}

/// A variable of either sort. The name never includes the `$` sigil.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Num(String),
    Seq(String),
}

impl Var {
    pub fn num(name: impl Into<String>) -> Self {
        Var::Num(name.into())
    }

    pub fn seq(name: impl Into<String>) -> Self {
        Var::Seq(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Var::Num(n) | Var::Seq(n) => n,
        }
    }

    pub fn sort(&self) -> Sort {
        match self {
            Var::Num(_) => Sort::Num,
            Var::Seq(_) => Sort::Seq,
        }
    }

    pub fn with_name(&self, name: String) -> Self {
        match self {
            Var::Num(_) => Var::Num(name),
            Var::Seq(_) => Var::Seq(name),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Num(n) => f.write_str(n),
            Var::Seq(n) => write!(f, "${n}"),
        }
    }
}

/// Terms of type 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// Literal numeral, shorthand for iterated successor of zero.
    Numeral(u64),
    /// Application of a declared constant; arguments follow its signature.
    Const(String, Vec<Arg>),
    /// Functor applied to a number term: `$a(t)` or `(\x. t)(s)`.
    Apply(Box<Functor>, Box<Term>),
}

/// Functors of type 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    Var(String),
    Lambda(String, Box<Term>),
}

/// An argument of either sort: used by constant applications, schema
/// metavariables and substitutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    Term(Term),
    Functor(Functor),
}

impl Arg {
    pub fn sort(&self) -> Sort {
        match self {
            Arg::Term(_) => Sort::Num,
            Arg::Functor(_) => Sort::Seq,
        }
    }
}

impl From<Term> for Arg {
    fn from(t: Term) -> Self {
        Arg::Term(t)
    }
}

impl From<Functor> for Arg {
    fn from(f: Functor) -> Self {
        Arg::Functor(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// Relation used by a bounded number quantifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundRel {
    Le,
    Lt,
}

impl BoundRel {
    /// Name of the primitive recursive constant behind the relation.
    pub fn constant(self) -> &'static str {
        match self {
            BoundRel::Le => "le",
            BoundRel::Lt => "lt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    /// Formula metavariable of a schema template, e.g. `?A(x, y)`.
    Meta(String, Vec<Arg>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant(Quantifier, Var, Box<Formula>),
    /// `A x <= t. body` / `E x < t. body`.
    Bounded {
        q: Quantifier,
        var: String,
        rel: BoundRel,
        bound: Term,
        body: Box<Formula>,
    },
    /// `A $a | guard. body` / `E $a | guard. body`.
    Relativized {
        q: Quantifier,
        var: String,
        guard: Box<Formula>,
        body: Box<Formula>,
    },
    /// `E! y. body`, expanded at instantiation time.
    Unique(String, Box<Formula>),
}

// Constructors used throughout the crate and in tests.
impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn num(n: u64) -> Self {
        Term::Numeral(n)
    }

    pub fn constant(name: impl Into<String>, args: Vec<Arg>) -> Self {
        Term::Const(name.into(), args)
    }

    pub fn app(f: Functor, t: Term) -> Self {
        Term::Apply(Box::new(f), Box::new(t))
    }

    /// `$name(t)`.
    pub fn seq_app(name: impl Into<String>, t: Term) -> Self {
        Term::app(Functor::Var(name.into()), t)
    }

    pub fn binary(name: &str, a: Term, b: Term) -> Self {
        Term::Const(name.to_string(), vec![Arg::Term(a), Arg::Term(b)])
    }

    pub fn unary(name: &str, a: Term) -> Self {
        Term::Const(name.to_string(), vec![Arg::Term(a)])
    }

    pub fn pair(a: Term, b: Term) -> Self {
        Term::binary("pair", a, b)
    }
}

impl Functor {
    pub fn var(name: impl Into<String>) -> Self {
        Functor::Var(name.into())
    }

    pub fn lambda(var: impl Into<String>, body: Term) -> Self {
        Functor::Lambda(var.into(), Box::new(body))
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, v, Box::new(body))
    }

    pub fn meta(name: impl Into<String>, args: Vec<Arg>) -> Self {
        Formula::Meta(name.into(), args)
    }

    /// `s <= t`, abbreviating `le(s, t) = 0`.
    pub fn le(a: Term, b: Term) -> Self {
        Formula::Eq(Term::binary("le", a, b), Term::Numeral(0))
    }

    /// `s < t`, abbreviating `lt(s, t) = 0`.
    pub fn lt(a: Term, b: Term) -> Self {
        Formula::Eq(Term::binary("lt", a, b), Term::Numeral(0))
    }

    /// `s != t`, abbreviating `~s = t`.
    pub fn ne(a: Term, b: Term) -> Self {
        Formula::not(Formula::Eq(a, b))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Meta(..))
    }

    /// Number of connective and quantifier nodes on the longest branch.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Meta(..) => 0,
            Formula::Not(a) | Formula::Quant(_, _, a) | Formula::Unique(_, a) => 1 + a.depth(),
            Formula::Bounded { body, .. } => 1 + body.depth(),
            Formula::Relativized { guard, body, .. } => 1 + guard.depth().max(body.depth()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Metavariable names occurring in the formula, with their arities.
    pub fn metavariables(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Meta(n, args) = f {
                if !out.iter().any(|(m, _)| m == n) {
                    out.push((n.clone(), args.len()));
                }
            }
        });
        out
    }

    /// Pre-order traversal over subformulas (not into terms).
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Eq(..) | Formula::Meta(..) => {}
            Formula::Not(a) | Formula::Quant(_, _, a) | Formula::Unique(_, a) => a.visit(f),
            Formula::Bounded { body, .. } => body.visit(f),
            Formula::Relativized { guard, body, .. } => {
                guard.visit(f);
                body.visit(f);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_functor(self))
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_arg(self))
    }
}
