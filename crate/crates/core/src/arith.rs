//! Prime-power coding of finite sequences.
//!
//! `<a0, ..., an> = p0^a0 * ... * pn^an`, `<> = 1`, `(w)_j` is the exponent
//! of the `j`-th prime, and `lh(w) = sum_{j < w} sg((w)_j)`.

use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a sequence code")]
    NotSeq(BigUint),
    #[error("value too large to materialize: {0}")]
    TooLarge(String),
}

const SMALL_PRIMES: [u64; 32] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131,
];

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `j`-th prime, counting from `p0 = 2`.
pub fn nth_prime(j: usize) -> u64 {
    if let Some(&p) = SMALL_PRIMES.get(j) {
        return p;
    }
    let mut primes = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    if primes.is_empty() {
        primes.extend([2, 3]);
    }
    while primes.len() <= j {
        let mut c = primes[primes.len() - 1] + 2;
        loop {
            let composite = primes.iter().take_while(|&&p| p * p <= c).any(|&p| c.is_multiple_of(p));
            if !composite {
                break;
            }
            c += 2;
        }
        primes.push(c);
    }
    primes[j]
}

pub fn sg(n: &BigUint) -> BigUint {
    if n.is_zero() {
        BigUint::zero()
    } else {
        BigUint::one()
    }
}

/// Truncated subtraction.
pub fn monus(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        BigUint::zero()
    }
}

pub fn pow(base: &BigUint, exp: &BigUint) -> Result<BigUint, ArithError> {
    if base.is_zero() || base.is_one() {
        return Ok(if exp.is_zero() { BigUint::one() } else { base.clone() });
    }
    let e = exp
        .to_u32()
        .filter(|&e| u64::from(e) * base.bits() <= 1 << 26)
        .ok_or_else(|| ArithError::TooLarge(format!("{base}^{exp}")))?;
    Ok(base.pow(e))
}

/// `<x, y> = 2^x * 3^y`.
pub fn pair(x: &BigUint, y: &BigUint) -> Result<BigUint, ArithError> {
    Ok(pow(&BigUint::from(2u32), x)? * pow(&BigUint::from(3u32), y)?)
}

fn exponent_of(w: &BigUint, p: u64) -> u64 {
    if w.is_zero() {
        return 0;
    }
    if let Some(mut v) = w.to_u128() {
        let (p, mut k) = (u128::from(p), 0);
        while v % p == 0 {
            v /= p;
            k += 1;
        }
        return k;
    }
    let p = BigUint::from(p);
    let mut rem = w.clone();
    let mut k = 0;
    while (&rem % &p).is_zero() {
        rem /= &p;
        k += 1;
    }
    k
}

/// Number of distinct prime factors of a positive `w`.
fn lh_small(mut w: u128) -> u64 {
    let mut count = 0;
    for j in 0.. {
        if w == 1 {
            break;
        }
        let p = u128::from(nth_prime(j));
        if p * p > w {
            return count + 1;
        }
        if w.is_multiple_of(p) {
            count += 1;
            while w.is_multiple_of(p) {
                w /= p;
            }
        }
    }
    count
}

/// A natural number read as a sequence code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeqCode(pub BigUint);

impl SeqCode {
    pub fn empty() -> Self {
        SeqCode(BigUint::one())
    }

    pub fn from_u64(n: u64) -> Self {
        SeqCode(BigUint::from(n))
    }

    /// `<a0, ..., an>` with the entries used as exponents unchanged.
    pub fn encode(entries: &[u64]) -> Self {
        let mut w = BigUint::one();
        for (j, &a) in entries.iter().enumerate() {
            if a > 0 {
                w *= BigUint::from(nth_prime(j)).pow(a as u32);
            }
        }
        SeqCode(w)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// `(w)_j`; every exponent of `0` is taken to be `0`.
    pub fn proj(&self, j: usize) -> u64 {
        exponent_of(&self.0, nth_prime(j))
    }

    /// Number of `j` with `(w)_j != 0`, computed by factoring.
    pub fn lh(&self) -> u64 {
        if self.0.is_zero() {
            return 0;
        }
        if let Some(w) = self.0.to_u128() {
            return lh_small(w);
        }
        let mut rem = self.0.clone();
        let mut count = 0;
        let mut j = 0;
        loop {
            if rem.is_one() {
                return count;
            }
            let p = BigUint::from(nth_prime(j));
            if &p * &p > rem {
                return count + 1;
            }
            if (&rem % &p).is_zero() {
                count += 1;
                while (&rem % &p).is_zero() {
                    rem /= &p;
                }
            }
            j += 1;
        }
    }

    /// `Seq(w)`: a positive code whose first `lh(w)` exponents are nonzero.
    pub fn is_seq(&self) -> bool {
        !self.0.is_zero() && (0..self.lh() as usize).all(|j| self.proj(j) != 0)
    }

    /// `(w)_0, ..., (w)_{lh(w)-1}`.
    pub fn entries(&self) -> Vec<u64> {
        (0..self.lh() as usize).map(|j| self.proj(j)).collect()
    }

    /// `u * v = u * prod_{j < lh(v)} p_{lh(u)+j}^{(v)_j}`.
    pub fn concat(&self, other: &SeqCode) -> Result<SeqCode, ArithError> {
        for w in [self, other] {
            if !w.is_seq() {
                return Err(ArithError::NotSeq(w.0.clone()));
            }
        }
        let offset = self.lh() as usize;
        let mut w = self.0.clone();
        for (j, a) in other.entries().into_iter().enumerate() {
            w *= BigUint::from(nth_prime(offset + j)).pow(a as u32);
        }
        Ok(SeqCode(w))
    }
}

impl From<BigUint> for SeqCode {
    fn from(n: BigUint) -> Self {
        SeqCode(n)
    }
}

/// `lh(w) = sum_{j < w} sg((w)_j)`, evaluated term by term.
pub fn lh_literal(w: u64) -> u64 {
    let code = SeqCode::from_u64(w);
    (0..w as usize).map(|j| u64::from(code.proj(j) != 0)).sum()
}

/// Read access to a sequence code that may be too long to materialize.
pub trait SeqView {
    fn lh(&self) -> BigUint;
    fn is_seq(&self) -> bool;
    /// `(v)_j` for `j < lh(v)`.
    fn entry(&self, j: u64) -> u64;
}

impl SeqView for SeqCode {
    fn lh(&self) -> BigUint {
        BigUint::from(SeqCode::lh(self))
    }
    fn is_seq(&self) -> bool {
        SeqCode::is_seq(self)
    }
    fn entry(&self, j: u64) -> u64 {
        self.proj(j as usize)
    }
}

/// The prefix code `bar(f, n) = <f(0)+1, ..., f(n-1)+1>` without
/// materializing it.
pub struct BarView<'a, F: Fn(u64) -> u64> {
    pub values: &'a F,
    pub len: BigUint,
}

impl<F: Fn(u64) -> u64> SeqView for BarView<'_, F> {
    fn lh(&self) -> BigUint {
        self.len.clone()
    }
    fn is_seq(&self) -> bool {
        true
    }
    fn entry(&self, j: u64) -> u64 {
        (self.values)(j) + 1
    }
}

/// `bar(f, n)` for a function given by its values.
pub fn bar_code(values: impl Fn(u64) -> u64, n: u64) -> SeqCode {
    let entries: Vec<u64> = (0..n).map(|i| values(i) + 1).collect();
    SeqCode::encode(&entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        let ps: Vec<u64> = (0..10).map(nth_prime).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(nth_prime(999), 7919);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(SeqCode::encode(&[]).0, BigUint::from(1u32));
        assert_eq!(SeqCode::encode(&[1]).0, BigUint::from(2u32));
        assert_eq!(SeqCode::encode(&[1, 1]).0, BigUint::from(6u32));
    }

    #[test]
    fn proj_examples() {
        assert_eq!(SeqCode::from_u64(6).proj(1), 1);
        assert!((0..20).all(|j| SeqCode::empty().proj(j) == 0));
        assert_eq!(SeqCode::from_u64(0).proj(3), 0);
    }

    #[test]
    fn lh_examples() {
        for (w, l) in [(1, 0), (6, 2), (4, 1), (0, 0), (10, 2)] {
            assert_eq!(SeqCode::from_u64(w).lh(), l, "lh({w})");
            assert_eq!(lh_literal(w), l, "literal lh({w})");
        }
    }

    #[test]
    fn seq_predicate() {
        assert!(SeqCode::from_u64(1).is_seq());
        assert!(SeqCode::from_u64(12).is_seq());
        assert!(!SeqCode::from_u64(10).is_seq());
        assert!(!SeqCode::from_u64(0).is_seq());
    }

    #[test]
    fn concat_examples() {
        let two = SeqCode::from_u64(2);
        assert_eq!(two.concat(&two).unwrap().0, BigUint::from(6u32));
        assert_eq!(SeqCode::empty().concat(&two).unwrap(), two);
        assert!(matches!(two.concat(&SeqCode::from_u64(10)), Err(ArithError::NotSeq(_))));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar_code(|_| 0, 2).0, BigUint::from(6u32));
        assert_eq!(bar_code(|i| i * 7, 0), SeqCode::empty());
    }

    #[test]
    fn monus_and_sg() {
        let n = |x: u32| BigUint::from(x);
        assert_eq!(monus(&n(3), &n(5)), n(0));
        assert_eq!(monus(&n(5), &n(3)), n(2));
        assert_eq!(sg(&n(5)), n(1));
        assert_eq!(pair(&n(2), &n(1)).unwrap(), n(12));
        assert!(pow(&n(2), &BigUint::from(u64::MAX)).is_err());
    }
}
