//! The binary sequence ρ built from α, search for bars of ρ along a
//! sequence, the coding function γ, and characteristic functions of
//! `A y. α(<j, y>) = 0`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, BarView, SeqCode, SeqView};
use crate::oracle::SequenceOracle;

use super::ModelError;

/// ρ for a fixed α: `ρ(w) = 0` iff `Seq(w)` and clause (d) or (e) holds
/// for some `j < lh(w)`.
#[derive(Debug, Clone)]
pub struct RhoConstruction {
    pub alpha: SequenceOracle,
}

pub fn make_rho(alpha: SequenceOracle) -> RhoConstruction {
    RhoConstruction { alpha }
}

fn small(n: &BigUint, what: &str) -> u64 {
    n.to_u64().unwrap_or_else(|| panic!("{what} {n} does not fit in u64"))
}

impl RhoConstruction {
    fn alpha_zero(&self, j: u64, y: u64) -> bool {
        let code = arith::pair(&BigUint::from(j), &BigUint::from(y)).expect("pair of small arguments");
        self.alpha.apply(&code).expect("oracles are total").is_zero()
    }

    /// `E y < bound. α(<j, y>) != 0`.
    fn nonzero_below(&self, j: u64, bound: u64) -> bool {
        (0..bound).any(|y| !self.alpha_zero(j, y))
    }

    /// `(w)_j = 1 & E y < lh(w). α(<j, y>) != 0`.
    pub fn clause_d(&self, w: &dyn SeqView, j: u64) -> bool {
        w.entry(j) == 1 && self.nonzero_below(j, small(&w.lh(), "lh"))
    }

    /// `(w)_j > 1 & [α(<j, (w)_j - 2>) = 0 \/ E y < (w)_j - 2. α(<j, y>) != 0]`.
    pub fn clause_e(&self, w: &dyn SeqView, j: u64) -> bool {
        let e = w.entry(j);
        e > 1 && (self.alpha_zero(j, e - 2) || self.nonzero_below(j, e - 2))
    }

    /// `ρ(w)`, always 0 or 1.
    pub fn value(&self, w: &dyn SeqView) -> u64 {
        if !w.is_seq() {
            return 1;
        }
        let lh = small(&w.lh(), "lh");
        u64::from(!(0..lh).any(|j| self.clause_d(w, j) || self.clause_e(w, j)))
    }

    pub fn at(&self, w: &BigUint) -> u64 {
        self.value(&SeqCode(w.clone()))
    }

    pub fn as_oracle(&self) -> SequenceOracle {
        let rho = self.clone();
        SequenceOracle::derived(format!("rho[{}]", self.alpha), move |w| BigUint::from(rho.at(w)))
    }
}

/// Least `n <= bound` with `ρ(bar(ζ, n)) = 0`.
pub fn bar_hit(rho: &RhoConstruction, zeta: &SequenceOracle, bound: u64) -> Option<u64> {
    let values = |i: u64| zeta.at_u64(i);
    (0..=bound).find(|&n| rho.value(&BarView { values: &values, len: BigUint::from(n) }) == 0)
}

/// γ decodes `lh(v) = 2^x * 3^y` and tests `ρ(x * <(v)_0, ..., (v)_{y-1}>)`.
#[derive(Debug, Clone)]
pub struct GammaConstruction {
    pub rho: RhoConstruction,
}

/// Splits `n` into `2^x * 3^y`, if it has that form.
fn split_pair(n: &BigUint) -> Option<(BigUint, u64)> {
    if n.is_zero() {
        return None;
    }
    let x = n.trailing_zeros().unwrap_or(0);
    let mut rest = n >> x;
    let three = BigUint::from(3u32);
    let mut y = 0;
    while (&rest % &three).is_zero() {
        rest /= &three;
        y += 1;
    }
    rest.is_one().then(|| (BigUint::from(x), y))
}

impl GammaConstruction {
    pub fn value(&self, v: &dyn SeqView) -> u64 {
        if !v.is_seq() {
            return 1;
        }
        let Some((x, y)) = split_pair(&v.lh()) else {
            return 1;
        };
        let x = SeqCode(x);
        if !x.is_seq() {
            return 1;
        }
        let prefix: Vec<u64> = (0..y).map(|j| v.entry(j)).collect();
        let u = x.concat(&SeqCode::encode(&prefix)).expect("both operands are sequence codes");
        self.rho.value(&u)
    }

    pub fn at(&self, v: &BigUint) -> u64 {
        self.value(&SeqCode(v.clone()))
    }
}

pub fn make_gamma(rho: &RhoConstruction) -> SequenceOracle {
    let g = GammaConstruction { rho: rho.clone() };
    SequenceOracle::derived(format!("gamma[{}]", rho.alpha), move |v| BigUint::from(g.at(v)))
}

/// `(j, y)` with `2^j * 3^y = n`.
fn unpair(n: &BigUint) -> Option<(u64, u64)> {
    let (j, y) = split_pair(n)?;
    Some((j.to_u64()?, y))
}

/// For a table with default 0: for each `j`, the `y` with `α(<j, y>) != 0`.
fn witnesses(alpha: &SequenceOracle) -> Result<Option<BTreeMap<u64, Vec<u64>>>, ModelError> {
    match alpha {
        SequenceOracle::Table { default, .. } if !default.is_zero() => Ok(None),
        SequenceOracle::Table { .. } => {
            let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
            for k in alpha.support().unwrap_or_default() {
                if let Some((j, y)) = unpair(&k) {
                    out.entry(j).or_default().push(y);
                }
            }
            Ok(Some(out))
        }
        other => Err(ModelError::NotDecidable(other.to_string())),
    }
}

/// χ with `χ(j) = 0` iff `α(<j, y>) = 0` for every `y`. Only finite tables
/// are accepted, and every nonzero `α(<j, y>)` must have `y <= range`.
pub fn characteristic_oracle(alpha: &SequenceOracle, range: u64) -> Result<SequenceOracle, ModelError> {
    match witnesses(alpha)? {
        None => Ok(SequenceOracle::constant(1)),
        Some(w) => {
            if w.values().flatten().any(|&y| y > range) {
                return Err(ModelError::NotDecidable(format!("{alpha} beyond y <= {range}")));
            }
            Ok(SequenceOracle::table(w.keys().map(|&j| (j, 1)), 0))
        }
    }
}

/// χ* with `χ*(j) = 0` if `α(<j, y>) = 0` for every `y`, and otherwise one
/// more than the least such `y` with `α(<j, y>) != 0`. These are exactly
/// the `ζ` along which ρ has no bar.
pub fn least_witness_oracle(alpha: &SequenceOracle) -> Result<SequenceOracle, ModelError> {
    match witnesses(alpha)? {
        Some(w) => Ok(SequenceOracle::table(w.iter().map(|(&j, ys)| (j, ys.iter().min().unwrap() + 1)), 0)),
        None => {
            let rho = make_rho(alpha.clone());
            Ok(SequenceOracle::derived(format!("least-witness[{alpha}]"), move |j| {
                let j = small(j, "index");
                let y = (0..).find(|&y| !rho.alpha_zero(j, y)).expect("a nonzero default gives a witness");
                BigUint::from(y + 1)
            }))
        }
    }
}
