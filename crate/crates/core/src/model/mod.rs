//! Bounded classical evaluation of formulas over sequence environments, and
//! executable versions of the bar and coding constructions.

mod constructions;
mod formulas;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::oracle::{eval_term, Env, EvalError, SequenceOracle};
use crate::syntax::{expand_unique, free_vars, print, BoundRel, Formula, Quantifier, Term, Var};

pub use constructions::{
    bar_hit, characteristic_oracle, least_witness_oracle, make_gamma, make_rho, GammaConstruction, RhoConstruction,
};
pub use formulas::{a_predicate, a_predicate_matrix, rho_formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("formula metavariable in `{0}`")]
    Schematic(String),
    #[error("bound {0} is too large to enumerate")]
    BoundTooLarge(BigUint),
    #[error("`{0}` has no decidable characteristic function")]
    NotDecidable(String),
}

/// Three-valued truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        !(!self).and(!other)
    }

    pub fn imp(self, other: Truth) -> Truth {
        (!self).or(other)
    }
}

impl std::ops::Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

/// Search bound for unbounded number quantifiers and the finite sample
/// range of sequence quantifiers.
#[derive(Debug, Clone)]
pub struct Profile {
    pub bound: u64,
    pub samples: Vec<SequenceOracle>,
}

/// Largest explicit bound a bounded quantifier may enumerate.
pub const MAX_EXPLICIT_BOUND: u64 = 1 << 20;

impl Profile {
    pub fn new(bound: u64, samples: Vec<SequenceOracle>) -> Profile {
        Profile { bound, samples }
    }

    /// The constant sequences 0 and 1 and the identity.
    pub fn default_samples() -> Vec<SequenceOracle> {
        vec![
            SequenceOracle::constant(0),
            SequenceOracle::constant(1),
            SequenceOracle::prterm("x", Term::var("x")).expect("identity is executable"),
        ]
    }

    pub fn with_bound(bound: u64) -> Profile {
        Profile::new(bound, Profile::default_samples())
    }
}

impl Default for Profile {
    fn default() -> Self {
        Profile::with_bound(100)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedVerdict {
    pub truth: Truth,
    pub bound: u64,
    pub samples: usize,
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (N={}, {} samples)", self.truth, self.bound, self.samples)
    }
}

/// Classical evaluation with unbounded number quantifiers searched up to
/// `profile.bound` and sequence quantifiers ranging over the samples. A
/// search that finds no witness (or no counterexample) yields `Unknown`.
pub fn eval_bounded(f: &Formula, env: &Env, profile: &Profile) -> Result<BoundedVerdict, ModelError> {
    if !f.metavariables().is_empty() {
        return Err(ModelError::Schematic(print(f)));
    }
    let fv = free_vars(f);
    if let Some(x) = fv.num.iter().next() {
        return Err(EvalError::FreeVariable(x.clone()).into());
    }
    if let Some(a) = fv.seq.iter().find(|a| !env.contains_key(*a)) {
        return Err(EvalError::MissingOracle(a.clone()).into());
    }
    let mut ev = Evaluator { env: env.clone(), nums: BTreeMap::new(), profile };
    Ok(BoundedVerdict { truth: ev.eval(f)?, bound: profile.bound, samples: profile.samples.len() })
}

struct Evaluator<'a> {
    env: Env,
    nums: BTreeMap<String, BigUint>,
    profile: &'a Profile,
}

impl Evaluator<'_> {
    fn with_num(&mut self, x: &str, v: BigUint, f: &Formula) -> Result<Truth, ModelError> {
        let old = self.nums.insert(x.to_string(), v);
        let r = self.eval(f);
        match old {
            Some(o) => self.nums.insert(x.to_string(), o),
            None => self.nums.remove(x),
        };
        r
    }

    fn with_seq(&mut self, a: &str, o: &SequenceOracle, f: &Formula) -> Result<Truth, ModelError> {
        let old = self.env.insert(a.to_string(), o.clone());
        let r = self.eval(f);
        match old {
            Some(o) => self.env.insert(a.to_string(), o),
            None => self.env.remove(a),
        };
        r
    }

    /// Quantifies over `count` values; `exact` says the range is the whole domain.
    fn quantify(
        &mut self,
        q: Quantifier,
        exact: bool,
        mut instance: impl FnMut(&mut Self, u64) -> Result<Truth, ModelError>,
        count: u64,
    ) -> Result<Truth, ModelError> {
        let (decisive, rest) = match q {
            Quantifier::Exists => (Truth::True, Truth::False),
            Quantifier::Forall => (Truth::False, Truth::True),
        };
        let mut unknown = false;
        for i in 0..count {
            match instance(self, i)? {
                t if t == decisive => return Ok(decisive),
                Truth::Unknown => unknown = true,
                _ => {}
            }
        }
        Ok(if exact && !unknown { rest } else { Truth::Unknown })
    }

    fn eval(&mut self, f: &Formula) -> Result<Truth, ModelError> {
        Ok(match f {
            Formula::Eq(s, t) => {
                Truth::from_bool(eval_term(s, &self.nums, &self.env)? == eval_term(t, &self.nums, &self.env)?)
            }
            Formula::Meta(..) => return Err(ModelError::Schematic(print(f))),
            Formula::Not(a) => !self.eval(a)?,
            Formula::And(a, b) => self.eval(a)?.and(self.eval(b)?),
            Formula::Or(a, b) => self.eval(a)?.or(self.eval(b)?),
            Formula::Imp(a, b) => self.eval(a)?.imp(self.eval(b)?),
            Formula::Iff(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.imp(b).and(b.imp(a))
            }
            Formula::Quant(q, Var::Num(x), body) => {
                let n = self.profile.bound.saturating_add(1);
                self.quantify(*q, false, |ev, i| ev.with_num(x, BigUint::from(i), body), n)?
            }
            Formula::Quant(q, Var::Seq(a), body) => {
                let samples = self.profile.samples.clone();
                self.quantify(*q, false, |ev, i| ev.with_seq(a, &samples[i as usize], body), samples.len() as u64)?
            }
            Formula::Bounded { q, var, rel, bound, body } => {
                let b = eval_term(bound, &self.nums, &self.env)?;
                let count = match rel {
                    BoundRel::Le => b.clone() + 1u32,
                    BoundRel::Lt => b.clone(),
                };
                let count = count.to_u64().filter(|&c| c <= MAX_EXPLICIT_BOUND).ok_or(ModelError::BoundTooLarge(b))?;
                self.quantify(*q, true, |ev, i| ev.with_num(var, BigUint::from(i), body), count)?
            }
            Formula::Relativized { q, var, guard, body } => {
                let samples = self.profile.samples.clone();
                let inner = |ev: &mut Self, i: u64| -> Result<Truth, ModelError> {
                    let o = &samples[i as usize];
                    let g = ev.with_seq(var, o, guard)?;
                    let b = ev.with_seq(var, o, body)?;
                    Ok(match q {
                        Quantifier::Forall => g.imp(b),
                        Quantifier::Exists => g.and(b),
                    })
                };
                self.quantify(*q, false, inner, samples.len() as u64)?
            }
            Formula::Unique(..) => self.eval(&expand_unique(f))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::parse_env;
    use crate::syntax::parse;

    fn ev(f: &str, env: &str, n: u64) -> Truth {
        eval_bounded(&parse(f).unwrap(), &parse_env(env).unwrap(), &Profile::with_bound(n)).unwrap().truth
    }

    #[test]
    fn bounded_quantifiers_are_decided() {
        assert_eq!(ev("A x <= 3. x + 0 = x", "", 0), Truth::True);
        assert_eq!(ev("E x < 3. x = 3", "", 0), Truth::False);
        assert_eq!(ev("A x <= 3. $a(x) = 0", "$a = table {} default 0", 0), Truth::True);
        assert_eq!(ev("A x < 0. 0 = 1", "", 0), Truth::True);
    }

    #[test]
    fn unbounded_searches() {
        assert_eq!(ev("E x. $a(x) = 0", "$a = table {} default 1", 100), Truth::Unknown);
        assert_eq!(ev("E x. $a(x) = 0", "$a = table {7:0} default 1", 100), Truth::True);
        assert_eq!(ev("E x. $a(x) = 0", "$a = table {7:0} default 1", 6), Truth::Unknown);
        assert_eq!(ev("A x. $a(x) = 1", "$a = table {7:0} default 1", 100), Truth::False);
        assert_eq!(ev("A x. x = x", "", 100), Truth::Unknown);
        assert_eq!(ev("~E x. x = 5", "", 10), Truth::False);
    }

    #[test]
    fn sequence_quantifiers_are_capped() {
        assert_eq!(ev("A $b. $b(0) = $b(0)", "", 5), Truth::Unknown);
        assert_eq!(ev("E $b. $b(3) = 3", "", 5), Truth::True);
        assert_eq!(ev("E $b. $b(3) = 7", "", 5), Truth::Unknown);
        assert_eq!(ev("A $b. $b(0) = 0", "", 5), Truth::False);
        assert_eq!(ev("A $b | $b(0) <= 1. $b(0) = 0", "", 5), Truth::False);
        assert_eq!(ev("E $b | $b(1) = 1. $b(2) = 2", "", 5), Truth::True);
    }

    #[test]
    fn qf_ac00_premise_and_conclusion() {
        let env = "$r = prterm sg(monus(proj(z, 1), proj(z, 0)) + monus(proj(z, 0), proj(z, 1)))";
        assert_eq!(ev("A x <= 5. E y. $r(pair(x, y)) = 0", env, 10), Truth::True);
        assert_eq!(ev("E $b. A x <= 5. $r(pair(x, $b(x))) = 0", env, 10), Truth::True);
    }

    #[test]
    fn unique_existence() {
        let f = parse("E! y. y = 2").unwrap();
        let p = Profile::with_bound(4);
        let e = Env::new();
        assert_eq!(eval_bounded(&f, &e, &p).unwrap(), eval_bounded(&expand_unique(&f), &e, &p).unwrap());
        assert_eq!(ev("E! y. y = 2", "", 4), Truth::Unknown);
    }

    #[test]
    fn errors() {
        let env = Env::new();
        let p = Profile::default();
        assert!(matches!(eval_bounded(&parse("x = 0").unwrap(), &env, &p), Err(ModelError::Eval(EvalError::FreeVariable(_)))));
        assert!(matches!(eval_bounded(&parse("$a(0) = 0").unwrap(), &env, &p), Err(ModelError::Eval(EvalError::MissingOracle(_)))));
        assert!(matches!(
            eval_bounded(&parse("kleene_u(0) = 0").unwrap(), &env, &p),
            Err(ModelError::Eval(EvalError::Uninterpreted(_)))
        ));
        assert!(matches!(eval_bounded(&parse("?A").unwrap(), &env, &p), Err(ModelError::Schematic(_))));
    }
}
