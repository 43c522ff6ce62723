//! Seeded random formulas for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{BoundRel, Formula, Functor, Quantifier, Term, Var};

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Upper bound on [`Formula::depth`].
    pub max_depth: usize,
    /// Free number variables that may occur.
    pub free_nums: Vec<String>,
    /// Free sequence parameters that may occur.
    pub free_seqs: Vec<String>,
    /// Emit only formulas without `\/` and `E`.
    pub negative: bool,
    /// Emit bounded, relativized and unique quantifiers.
    pub sugar: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 6,
            free_nums: vec!["x".into()],
            free_seqs: vec!["a".into(), "b".into()],
            negative: false,
            sugar: true,
        }
    }
}

pub struct FormulaGenerator {
    rng: ChaCha8Rng,
    cfg: GenConfig,
    nums: Vec<String>,
    seqs: Vec<String>,
    fresh: usize,
}

impl FormulaGenerator {
    pub fn new(seed: u64, cfg: GenConfig) -> FormulaGenerator {
        let (nums, seqs) = (cfg.free_nums.clone(), cfg.free_seqs.clone());
        FormulaGenerator { rng: ChaCha8Rng::seed_from_u64(seed), cfg, nums, seqs, fresh: 0 }
    }

    pub fn formula(&mut self) -> Formula {
        let depth = self.rng.gen_range(0..=self.cfg.max_depth);
        self.formula_at(depth)
    }

    /// A bound-variable name, reusing scope names now and then to exercise shadowing.
    fn binder(&mut self, seq: bool) -> String {
        let pool = if seq { &self.seqs } else { &self.nums };
        if !pool.is_empty() && self.rng.gen_bool(0.25) {
            return pool.choose(&mut self.rng).cloned().unwrap_or_default();
        }
        self.fresh += 1;
        let base = if seq { ["b", "c", "d"] } else { ["y", "z", "u"] };
        format!("{}{}", base[self.fresh % 3], self.fresh / 3)
    }

    fn under<T>(&mut self, name: &str, seq: bool, body: impl FnOnce(&mut Self) -> T) -> T {
        if seq { &mut self.seqs } else { &mut self.nums }.push(name.to_string());
        let out = body(self);
        if seq { &mut self.seqs } else { &mut self.nums }.pop();
        out
    }

    pub fn term(&mut self, depth: usize) -> Term {
        let leaf = depth == 0 || self.rng.gen_bool(0.4);
        if leaf {
            return match self.nums.choose(&mut self.rng) {
                Some(x) if self.rng.gen_bool(0.6) => Term::var(x.clone()),
                _ => Term::Numeral(self.rng.gen_range(0..3)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 => Term::unary("suc", self.term(d)),
            1 => Term::binary("add", self.term(d), self.term(d)),
            2 => Term::pair(self.term(d), self.term(d)),
            3 | 4 if !self.seqs.is_empty() => {
                let a = self.seqs.choose(&mut self.rng).cloned().unwrap_or_default();
                Term::seq_app(a, self.term(d))
            }
            _ => {
                let v = self.binder(false);
                let body = self.under(&v, false, |g| g.term(d));
                Term::Apply(Box::new(Functor::Lambda(v, Box::new(body))), Box::new(self.term(d)))
            }
        }
    }

    fn atom(&mut self) -> Formula {
        Formula::eq(self.term(2), self.term(2))
    }

    /// A formula of depth at most `depth`.
    pub fn formula_at(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.15) {
            return self.atom();
        }
        let d = depth - 1;
        let negative = self.cfg.negative;
        let choices: &[u8] = match (negative, self.cfg.sugar) {
            (false, true) => &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
            (false, false) => &[0, 1, 2, 3, 4, 5, 6, 7, 8],
            (true, true) => &[0, 1, 3, 4, 5, 7, 9, 10],
            (true, false) => &[0, 1, 3, 4, 5, 7],
        };
        let pick = *choices.choose(&mut self.rng).expect("nonempty");
        let forall = negative || self.rng.gen_bool(0.5);
        let q = if forall { Quantifier::Forall } else { Quantifier::Exists };
        match pick {
            0 => Formula::not(self.formula_at(d)),
            1 => Formula::and(self.formula_at(d), self.formula_at(d)),
            2 => Formula::or(self.formula_at(d), self.formula_at(d)),
            3 => Formula::imp(self.formula_at(d), self.formula_at(d)),
            4 => Formula::iff(self.formula_at(d), self.formula_at(d)),
            5 | 6 => {
                let x = self.binder(false);
                let body = self.under(&x, false, |g| g.formula_at(d));
                Formula::Quant(if pick == 5 { Quantifier::Forall } else { Quantifier::Exists }, Var::num(x), Box::new(body))
            }
            7 | 8 => {
                let a = self.binder(true);
                let body = self.under(&a, true, |g| g.formula_at(d));
                Formula::Quant(if pick == 7 { Quantifier::Forall } else { Quantifier::Exists }, Var::seq(a), Box::new(body))
            }
            9 => {
                let bound = self.term(1);
                let var = self.binder(false);
                let rel = if self.rng.gen_bool(0.5) { BoundRel::Le } else { BoundRel::Lt };
                let body = self.under(&var, false, |g| g.formula_at(d));
                Formula::Bounded { q, var, rel, bound, body: Box::new(body) }
            }
            10 => {
                let var = self.binder(true);
                let (guard, body) = self.under(&var, true, |g| (g.atom(), g.formula_at(d)));
                Formula::Relativized { q, var, guard: Box::new(guard), body: Box::new(body) }
            }
            _ => {
                let y = self.binder(false);
                let body = self.under(&y, false, |g| g.formula_at(d));
                Formula::Unique(y, Box::new(body))
            }
        }
    }
}

/// `count` formulas from one seed.
pub fn sample(seed: u64, cfg: GenConfig, count: usize) -> Vec<Formula> {
    let mut g = FormulaGenerator::new(seed, cfg);
    (0..count).map(|_| g.formula()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, print};
    use crate::translate::is_negative;

    #[test]
    fn seeded_and_bounded() {
        let cfg = GenConfig::default();
        assert_eq!(sample(7, cfg.clone(), 50), sample(7, cfg.clone(), 50));
        for f in sample(1, cfg, 300) {
            assert!(f.depth() <= 6);
            assert_eq!(parse(&print(&f)).unwrap(), f, "{}", print(&f));
        }
    }

    #[test]
    fn negative_mode() {
        let cfg = GenConfig { negative: true, max_depth: 4, ..GenConfig::default() };
        for f in sample(2, cfg, 300) {
            assert!(is_negative(&f), "{}", print(&f));
            assert!(f.depth() <= 4);
        }
    }

    #[test]
    fn covers_the_sugar_and_both_sorts() {
        let fs = sample(3, GenConfig::default(), 500);
        let mut seen = [false; 4];
        for f in &fs {
            f.visit(&mut |g| match g {
                Formula::Bounded { .. } => seen[0] = true,
                Formula::Relativized { .. } => seen[1] = true,
                Formula::Quant(_, Var::Seq(_), _) => seen[2] = true,
                Formula::Unique(..) => seen[3] = true,
                _ => {}
            });
        }
        assert_eq!(seen, [true; 4]);
    }
}
