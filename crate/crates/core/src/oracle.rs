//! Total number-theoretic functions standing in for sequence variables,
//! and evaluation of primitive recursive terms over them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{self, ArithError, SeqCode};
use crate::syntax::{parse_term, print_term, Arg, Builtin, ConstantTable, Functor, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("constant `{0}` has no executable definition")]
    Uninterpreted(String),
    #[error("constant `{0}` is not declared")]
    UnknownConstant(String),
    #[error("no oracle for sequence variable ${0}")]
    MissingOracle(String),
    #[error("free number variable `{0}`")]
    FreeVariable(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A total function `N -> N` with a finite description.
#[derive(Clone)]
pub enum SequenceOracle {
    /// Finitely many exceptions to a default value.
    Table { entries: BTreeMap<BigUint, BigUint>, default: BigUint },
    /// A primitive recursive term in one number variable.
    PrTerm { var: String, body: Term },
    /// A function computed in Rust, with a display label.
    Derived { label: String, f: Arc<dyn Fn(&BigUint) -> BigUint + Send + Sync> },
}

impl fmt::Debug for SequenceOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SequenceOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceOracle::Table { entries, default } => {
                let body: Vec<String> = entries.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                write!(f, "table {{{}}} default {default}", body.join(", "))
            }
            SequenceOracle::PrTerm { body, .. } => write!(f, "prterm {}", print_term(body)),
            SequenceOracle::Derived { label, .. } => write!(f, "derived {label}"),
        }
    }
}

impl SequenceOracle {
    pub fn constant(c: u64) -> Self {
        SequenceOracle::Table { entries: BTreeMap::new(), default: BigUint::from(c) }
    }

    /// A finite-support function: `pairs` listed, everything else `default`.
    pub fn table(pairs: impl IntoIterator<Item = (u64, u64)>, default: u64) -> Self {
        SequenceOracle::Table {
            entries: pairs.into_iter().map(|(k, v)| (BigUint::from(k), BigUint::from(v))).collect(),
            default: BigUint::from(default),
        }
    }

    /// Checks that `body` mentions no sequence variable, no number variable
    /// other than `var`, and only executable constants.
    pub fn prterm(var: impl Into<String>, body: Term) -> Result<Self, EvalError> {
        let var = var.into();
        let fv = crate::syntax::free_vars_term(&body);
        if let Some(a) = fv.seq.iter().next() {
            return Err(EvalError::MissingOracle(a.clone()));
        }
        if let Some(x) = fv.num.iter().find(|x| **x != var) {
            return Err(EvalError::FreeVariable(x.clone()));
        }
        check_executable(&body)?;
        Ok(SequenceOracle::PrTerm { var, body })
    }

    pub fn derived(label: impl Into<String>, f: impl Fn(&BigUint) -> BigUint + Send + Sync + 'static) -> Self {
        SequenceOracle::Derived { label: label.into(), f: Arc::new(f) }
    }

    pub fn apply(&self, x: &BigUint) -> Result<BigUint, EvalError> {
        match self {
            SequenceOracle::Table { entries, default } => Ok(entries.get(x).unwrap_or(default).clone()),
            SequenceOracle::PrTerm { var, body } => {
                let mut nums = BTreeMap::new();
                nums.insert(var.clone(), x.clone());
                eval_term(body, &nums, &Env::new())
            }
            SequenceOracle::Derived { f, .. } => Ok(f(x)),
        }
    }

    /// Value at a small argument; panics only if a term oracle overflows.
    pub fn at(&self, x: u64) -> BigUint {
        self.apply(&BigUint::from(x)).expect("oracle evaluation")
    }

    pub fn at_u64(&self, x: u64) -> u64 {
        self.at(x).to_u64().expect("oracle value fits in u64")
    }

    /// Arguments on which a table differs from its default.
    pub fn support(&self) -> Option<Vec<BigUint>> {
        match self {
            SequenceOracle::Table { entries, default } => {
                Some(entries.iter().filter(|(_, v)| *v != default).map(|(k, _)| k.clone()).collect())
            }
            _ => None,
        }
    }
}

/// Sequence-variable environment.
pub type Env = BTreeMap<String, SequenceOracle>;

fn check_executable(t: &Term) -> Result<(), EvalError> {
    match t {
        Term::Var(_) | Term::Numeral(_) => Ok(()),
        Term::Const(name, args) => {
            let decl = ConstantTable::standard().get(name).ok_or_else(|| EvalError::UnknownConstant(name.clone()))?;
            if decl.hook.is_none() {
                return Err(EvalError::Uninterpreted(name.clone()));
            }
            for a in args {
                match a {
                    Arg::Term(t) => check_executable(t)?,
                    Arg::Functor(Functor::Lambda(_, b)) => check_executable(b)?,
                    Arg::Functor(Functor::Var(_)) => {}
                }
            }
            Ok(())
        }
        Term::Apply(f, x) => {
            if let Functor::Lambda(_, b) = f.as_ref() {
                check_executable(b)?;
            }
            check_executable(x)
        }
    }
}

/// Value of a closed term under the standard semantics.
pub fn eval_pr(t: &Term, env: &Env) -> Result<BigUint, EvalError> {
    eval_term(t, &BTreeMap::new(), env)
}

/// Value of a term whose free number variables are bound in `nums`.
pub fn eval_term(t: &Term, nums: &BTreeMap<String, BigUint>, env: &Env) -> Result<BigUint, EvalError> {
    match t {
        Term::Var(x) => nums.get(x).cloned().ok_or_else(|| EvalError::FreeVariable(x.clone())),
        Term::Numeral(n) => Ok(BigUint::from(*n)),
        Term::Apply(f, x) => {
            let x = eval_term(x, nums, env)?;
            apply_functor(f, &x, nums, env)
        }
        Term::Const(name, args) => {
            let decl = ConstantTable::standard().get(name).ok_or_else(|| EvalError::UnknownConstant(name.clone()))?;
            let hook = decl.hook.ok_or_else(|| EvalError::Uninterpreted(name.clone()))?;
            if hook == Builtin::Bar {
                let (Arg::Functor(f), Arg::Term(n)) = (&args[0], &args[1]) else {
                    unreachable!("bar is declared with sorts (functor, term)");
                };
                let n = eval_term(n, nums, env)?;
                let n = n.to_u64().filter(|&n| n <= 1 << 16).ok_or_else(|| ArithError::TooLarge(format!("bar length {n}")))?;
                let mut entries = Vec::with_capacity(n as usize);
                for i in 0..n {
                    let v = apply_functor(f, &BigUint::from(i), nums, env)? + 1u32;
                    entries.push(v.to_u64().ok_or_else(|| ArithError::TooLarge(format!("entry {v}")))?);
                }
                return Ok(SeqCode::encode(&entries).0);
            }
            let vals = args
                .iter()
                .map(|a| match a {
                    Arg::Term(t) => eval_term(t, nums, env),
                    Arg::Functor(_) => unreachable!("only bar takes a functor argument"),
                })
                .collect::<Result<Vec<_>, _>>()?;
            builtin(hook, &vals)
        }
    }
}

fn apply_functor(f: &Functor, x: &BigUint, nums: &BTreeMap<String, BigUint>, env: &Env) -> Result<BigUint, EvalError> {
    match f {
        Functor::Var(a) => env.get(a).ok_or_else(|| EvalError::MissingOracle(a.clone()))?.apply(x),
        Functor::Lambda(v, body) => {
            let mut inner = nums.clone();
            inner.insert(v.clone(), x.clone());
            eval_term(body, &inner, env)
        }
    }
}

fn small(n: &BigUint) -> Result<usize, EvalError> {
    n.to_usize()
        .filter(|&n| n < 1 << 20)
        .ok_or_else(|| EvalError::Arith(ArithError::TooLarge(format!("index {n}"))))
}

fn truth(b: bool) -> BigUint {
    if b {
        BigUint::zero()
    } else {
        BigUint::one()
    }
}

fn builtin(hook: Builtin, v: &[BigUint]) -> Result<BigUint, EvalError> {
    use Builtin::*;
    Ok(match hook {
        Suc => &v[0] + 1u32,
        Add => &v[0] + &v[1],
        Mul => &v[0] * &v[1],
        Pred => arith::monus(&v[0], &BigUint::one()),
        Monus => arith::monus(&v[0], &v[1]),
        Sg => arith::sg(&v[0]),
        Le => truth(v[0] <= v[1]),
        Lt => truth(v[0] < v[1]),
        Pow => arith::pow(&v[0], &v[1])?,
        Pair => arith::pair(&v[0], &v[1])?,
        One => arith::pow(&BigUint::from(2u32), &v[0])?,
        Prime => BigUint::from(arith::nth_prime(small(&v[0])?)),
        Proj => BigUint::from(SeqCode(v[0].clone()).proj(small(&v[1])?)),
        Lh => BigUint::from(SeqCode(v[0].clone()).lh()),
        Seq => truth(SeqCode(v[0].clone()).is_seq()),
        Cat => SeqCode(v[0].clone()).concat(&SeqCode(v[1].clone()))?.0,
        Bar => unreachable!("handled by the caller"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct EnvParseError {
    pub line: usize,
    pub msg: String,
}

/// Parses an environment file: one `$name = table {k:v, ...} default d` or
/// `$name = prterm <term>` per line, `#` comments.
pub fn parse_env(text: &str) -> Result<Env, EnvParseError> {
    let mut env = Env::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| EnvParseError { line: i + 1, msg };
        let (name, desc) = line.split_once('=').ok_or_else(|| err("expected `$name = ...`".into()))?;
        let name = name.trim().trim_start_matches('$').to_string();
        if name.is_empty() {
            return Err(err("missing variable name".into()));
        }
        let oracle = parse_oracle(desc.trim()).map_err(err)?;
        env.insert(name, oracle);
    }
    Ok(env)
}

/// Parses one oracle description.
pub fn parse_oracle(desc: &str) -> Result<SequenceOracle, String> {
    if let Some(rest) = desc.strip_prefix("prterm") {
        let body = parse_term(rest.trim()).map_err(|e| e.to_string())?;
        let fv = crate::syntax::free_vars_term(&body);
        let var = match fv.num.len() {
            0 => "x".to_string(),
            1 => fv.num.iter().next().cloned().unwrap_or_default(),
            _ => return Err("a term oracle must have at most one free number variable".into()),
        };
        return SequenceOracle::prterm(var, body).map_err(|e| e.to_string());
    }
    let rest = desc.strip_prefix("table").ok_or_else(|| format!("unknown oracle kind in `{desc}`"))?.trim();
    let open = rest.strip_prefix('{').ok_or("expected `{` after table")?;
    let (body, tail) = open.split_once('}').ok_or("unterminated table")?;
    let default = match tail.trim() {
        "" => BigUint::zero(),
        t => {
            let d = t.strip_prefix("default").ok_or("expected `default <n>`")?.trim();
            d.parse::<BigUint>().map_err(|_| format!("bad default `{d}`"))?
        }
    };
    let mut entries = BTreeMap::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once(':').ok_or_else(|| format!("bad table entry `{item}`"))?;
        let k = k.trim().parse::<BigUint>().map_err(|_| format!("bad key `{k}`"))?;
        let v = v.trim().parse::<BigUint>().map_err(|_| format!("bad value `{v}`"))?;
        entries.insert(k, v);
    }
    Ok(SequenceOracle::Table { entries, default })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> Result<BigUint, EvalError> {
        eval_pr(&parse_term(s).unwrap(), &Env::new())
    }

    #[test]
    fn closed_terms() {
        assert_eq!(ev("3").unwrap(), BigUint::from(3u32));
        assert_eq!(ev("pair(2, 1)").unwrap(), BigUint::from(12u32));
        assert_eq!(ev("sg(5)").unwrap(), BigUint::from(1u32));
        assert_eq!(ev("(\\x. x * x + 1)(3)").unwrap(), BigUint::from(10u32));
        assert_eq!(ev("lh(cat(6, 4))").unwrap(), BigUint::from(3u32));
        assert_eq!(ev("bar(\\i. 0, 2)").unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn uninterpreted_and_missing() {
        assert_eq!(ev("kleene_u(3)"), Err(EvalError::Uninterpreted("kleene_u".into())));
        assert_eq!(ev("$a(0)"), Err(EvalError::MissingOracle("a".into())));
        assert_eq!(ev("x + 1"), Err(EvalError::FreeVariable("x".into())));
        assert!(matches!(ev("cat(10, 2)"), Err(EvalError::Arith(ArithError::NotSeq(_)))));
    }

    #[test]
    fn env_files() {
        let env = parse_env("# sample\n$a = table {1:1, 6:3} default 0\n$b = prterm x + 1\n").unwrap();
        assert_eq!(env["a"].at_u64(1), 1);
        assert_eq!(env["a"].at_u64(6), 3);
        assert_eq!(env["a"].at_u64(7), 0);
        assert_eq!(env["b"].at_u64(41), 42);
        let t = parse_term("$a(pair(0, 0)) + $b(bar($a, 2))").unwrap();
        assert_eq!(eval_pr(&t, &env).unwrap(), BigUint::from(20u32));
        assert!(parse_env("$c = prterm kleene_u(x)").is_err());
        assert_eq!(parse_env("$c = table {}").unwrap()["c"].at_u64(9), 0);
        assert!(parse_env("garbage").is_err());
    }
}
