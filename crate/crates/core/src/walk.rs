//! Gambler's-ruin walks on nodes `0..=m`, started at `m - 1`.
//!
//! Each step goes right with probability `p` and left with probability
//! `1 - p`; the walk stops at `0` or `m`. Write `Pi_{m,p}` for the probability
//! of stopping at `m` and `L_m(p)` for the mean number of steps given that it
//! does. The walks that stop at `m` after `2k + 1` steps correspond one to one
//! with Dyck paths of order `k` and height at most `m - 2`, which gives
//!
//! ```text
//! f_m(p) L_m(p) = sum_k (2k+1) A(m-2, k) x^k,   x = p(1-p).
//! ```
//!
//! The exact routes here work in rational arithmetic and require
//! `0 < p < 1`, `p != 1/2`. [`simulate`] estimates the same quantities.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genfunc::{gf_denominator, gf_numerator};
use crate::hpoly::{check_probability, f_eval, g_eval, x_of};
use crate::poly::IntPoly;

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::IndexTooSmall {
            min: min as u64,
            got: m as u64,
        });
    }
    Ok(())
}

/// `Pi_{m,p} = p g_{m-1}(p) / g_m(p)`.
pub fn pi_closed(m: usize, p: &BigRational) -> Result<BigRational> {
    check_m(m, 2)?;
    check_probability(p)?;
    Ok(p * g_eval(m - 1, p) / g_eval(m, p))
}

/// `L_m(p)` from `L_2 = 1` and `L_j = f_j + L_{j-1} (f_j - 1)`.
pub fn l_exact(m: usize, p: &BigRational) -> Result<BigRational> {
    check_m(m, 2)?;
    check_probability(p)?;
    let mut l = BigRational::one();
    for j in 3..=m {
        let f = f_eval(j, p)?;
        l = &f + l * (&f - BigRational::one());
    }
    Ok(l)
}

/// `f_m(p) L_m(p)` from the closed form
/// `(x^(m-1)(1-2m) + H_{2m-1}(x)) / ((1-4x) H_m(x)^2)`.
pub fn fl_closed(m: usize, p: &BigRational) -> Result<BigRational> {
    check_m(m, 2)?;
    check_probability(p)?;
    let x = x_of(p);
    let n = m - 2;
    Ok(gf_numerator(n).eval(&x) / gf_denominator(n).eval(&x))
}

/// First-step decomposition of the conditional hitting time:
/// `Pi L_m = p + (Pi - p)(1 + L_{m-1} + L_m)`.
///
/// Going left first costs that one step, then `L_{m-1}` to climb back to
/// `m - 1`, then `L_m` again.
pub fn expval_check(m: usize, p: &BigRational) -> Result<bool> {
    check_m(m, 3)?;
    let pi = pi_closed(m, p)?;
    let l = l_exact(m, p)?;
    let l_prev = l_exact(m - 1, p)?;
    let lhs = &pi * &l;
    let rhs = p + (&pi - p) * (BigRational::one() + l_prev + &l);
    Ok(lhs == rhs)
}

/// Order of the Dyck path matching a walk of the given (odd) length.
pub fn walk_to_path_order(length: u64) -> Result<u64> {
    if length.is_multiple_of(2) {
        return Err(Error::EvenWalkLength(length));
    }
    Ok((length - 1) / 2)
}

/// `sum_{k <= K} w_k x^k` for `x = p(1-p)`, given weights `w_k`
/// (typically `(2k+1) A(m-2, k)`).
pub fn series_partial_sum(weights: &IntPoly, p: &BigRational) -> BigRational {
    weights.eval(&x_of(p))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    /// Right absorbing node; the walk starts at `m - 1`.
    pub m: u64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub max_steps: u64,
}

impl WalkConfig {
    pub fn new(m: u64, p: f64, trials: u64, seed: u64) -> Self {
        Self {
            m,
            p,
            trials,
            seed,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidConfig(format!(
                "m must be at least 2, got {}",
                self.m
            )));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(self.p.to_string()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be positive".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    /// Absorbed at `m` after this many steps.
    Right(u64),
    /// Absorbed at `0` after this many steps.
    Left(u64),
    Truncated,
}

/// Runs trial `t` of `cfg`. Its random stream depends only on
/// `(cfg.seed, t)`.
pub fn run_trial(cfg: &WalkConfig, t: u64) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(t);
    let mut pos = cfg.m - 1;
    let mut steps = 0u64;
    while steps < cfg.max_steps {
        steps += 1;
        if rng.gen::<f64>() < cfg.p {
            pos += 1;
            if pos == cfg.m {
                return TrialOutcome::Right(steps);
            }
        } else {
            pos -= 1;
            if pos == 0 {
                return TrialOutcome::Left(steps);
            }
        }
    }
    TrialOutcome::Truncated
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    trials: u64,
    right: u64,
    left: u64,
    truncated: u64,
    len_sum: u128,
    len_sq_sum: u128,
    shortest_right: Option<u64>,
    even_right: u64,
}

impl Tally {
    fn record(mut self, outcome: TrialOutcome) -> Self {
        self.trials += 1;
        match outcome {
            TrialOutcome::Right(len) => {
                self.right += 1;
                self.len_sum += u128::from(len);
                self.len_sq_sum += u128::from(len) * u128::from(len);
                self.shortest_right = Some(self.shortest_right.map_or(len, |s| s.min(len)));
                self.even_right += u64::from(len % 2 == 0);
            }
            TrialOutcome::Left(_) => self.left += 1,
            TrialOutcome::Truncated => self.truncated += 1,
        }
        self
    }

    fn merge(self, o: Self) -> Self {
        Self {
            trials: self.trials + o.trials,
            right: self.right + o.right,
            left: self.left + o.left,
            truncated: self.truncated + o.truncated,
            len_sum: self.len_sum + o.len_sum,
            len_sq_sum: self.len_sq_sum + o.len_sq_sum,
            shortest_right: match (self.shortest_right, o.shortest_right) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            even_right: self.even_right + o.even_right,
        }
    }
}

/// Monte Carlo summary. Estimators exclude truncated trials; undefined
/// estimates (no absorbed or no right-absorbed trials) are `NaN`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkStats {
    pub trials_run: u64,
    pub hits_right: u64,
    pub hits_left: u64,
    pub truncated: u64,
    pub pi_hat: f64,
    pub pi_se: f64,
    pub l_hat: f64,
    pub l_se: f64,
    pub shortest_right: Option<u64>,
    /// Right-absorbed walks of even length; always zero.
    pub even_right_lengths: u64,
}

impl WalkStats {
    fn from_tally(t: &Tally) -> Self {
        let absorbed = t.right + t.left;
        let (pi_hat, pi_se) = if absorbed == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let pi = t.right as f64 / absorbed as f64;
            (pi, (pi * (1.0 - pi) / absorbed as f64).sqrt())
        };
        let l_hat = if t.right == 0 {
            f64::NAN
        } else {
            ratio_f64(t.len_sum, u128::from(t.right))
        };
        let l_se = if t.right < 2 {
            f64::NAN
        } else {
            // sample variance, exact in integers up to the final division
            let r = u128::from(t.right);
            let spread = r * t.len_sq_sum - t.len_sum * t.len_sum;
            let var = ratio_f64(spread, r * (r - 1));
            (var / r as f64).sqrt()
        };
        Self {
            trials_run: t.trials,
            hits_right: t.right,
            hits_left: t.left,
            truncated: t.truncated,
            pi_hat,
            pi_se,
            l_hat,
            l_se,
            shortest_right: t.shortest_right,
            even_right_lengths: t.even_right,
        }
    }

    /// Any trial hit the step cap.
    pub fn is_unreliable(&self) -> bool {
        self.truncated > 0
    }

    /// `(pi_hat - pi) / pi_se`; zero when both the error and the standard
    /// error vanish.
    pub fn pi_z(&self, pi: f64) -> f64 {
        z_score(self.pi_hat - pi, self.pi_se)
    }

    pub fn l_z(&self, l: f64) -> f64 {
        z_score(self.l_hat - l, self.l_se)
    }
}

fn ratio_f64(num: u128, den: u128) -> f64 {
    BigRational::new(num.into(), den.into())
        .to_f64()
        .unwrap_or(f64::NAN)
}

fn z_score(diff: f64, se: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / se
    }
}

/// Runs `cfg.trials` independent walks in parallel. The result does not depend
/// on thread scheduling.
pub fn simulate(cfg: &WalkConfig) -> Result<WalkStats> {
    cfg.validate()?;
    let tally = (0..cfg.trials)
        .into_par_iter()
        .fold(Tally::default, |acc, t| acc.record(run_trial(cfg, t)))
        .reduce(Tally::default, Tally::merge);
    Ok(WalkStats::from_tally(&tally))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pi_examples() {
        for p in [q(1, 3), q(2, 5), q(9, 10)] {
            assert_eq!(pi_closed(2, &p).unwrap(), p);
        }
        assert_eq!(pi_closed(3, &q(1, 3)).unwrap(), q(3, 7));
        assert_eq!(pi_closed(4, &q(1, 2)), Err(Error::HalfProbability));
        assert!(pi_closed(1, &q(1, 3)).is_err());
    }

    #[test]
    fn pi_matches_absorbing_chain() {
        // m = 3: P1 = p P2, P2 = p + (1-p) P1  =>  P2 = p / (1 - p(1-p))
        for p in [q(1, 3), q(2, 5), q(1, 4), q(3, 7)] {
            let direct = &p / (BigRational::one() - x_of(&p));
            assert_eq!(pi_closed(3, &p).unwrap(), direct);
        }
    }

    #[test]
    fn l_examples() {
        assert_eq!(l_exact(2, &q(1, 3)).unwrap(), q(1, 1));
        assert_eq!(l_exact(3, &q(1, 3)).unwrap(), q(11, 7));
        // f_3(2/5) = g_2/g_3 = (1/5)/(19/125) = 25/19
        assert_eq!(l_exact(3, &q(2, 5)).unwrap(), q(31, 19));
        assert_eq!(l_exact(3, &q(1, 2)), Err(Error::HalfProbability));
        assert!(l_exact(1, &q(1, 3)).is_err());
    }

    #[test]
    fn fl_examples() {
        for p in [q(1, 3), q(2, 5), q(4, 5)] {
            assert_eq!(fl_closed(2, &p).unwrap(), q(1, 1));
        }
        assert_eq!(fl_closed(3, &q(1, 3)).unwrap(), q(99, 49));
        // (1 + x)/(1 - x)^2 at x = 2/9
        let x = q(2, 9);
        let one = BigRational::one();
        let series = (&one + &x) / ((&one - &x) * (&one - &x));
        assert_eq!(fl_closed(3, &q(1, 3)).unwrap(), series);
        let p = q(1, 3);
        assert_eq!(
            fl_closed(4, &p).unwrap(),
            f_eval(4, &p).unwrap() * l_exact(4, &p).unwrap()
        );
        assert_eq!(fl_closed(5, &q(1, 2)), Err(Error::HalfProbability));
    }

    #[test]
    fn expval_examples() {
        assert_eq!(expval_check(3, &q(1, 3)), Ok(true));
        assert_eq!(expval_check(5, &q(2, 5)), Ok(true));
        assert_eq!(expval_check(3, &q(1, 2)), Err(Error::HalfProbability));
        assert!(expval_check(2, &q(1, 3)).is_err());
    }

    #[test]
    fn relation_without_first_step_term_does_not_hold() {
        // Pi L_m = p + (Pi - p)(L_{m-1} + L_m) drops the cost of the first
        // left step: 33/49 on the left, 85/147 on the right.
        let p = q(1, 3);
        let pi = pi_closed(3, &p).unwrap();
        let l = l_exact(3, &p).unwrap();
        let lhs = &pi * &l;
        let rhs = &p + (&pi - &p) * (BigRational::one() + &l);
        assert_eq!(lhs, q(33, 49));
        assert_eq!(rhs, q(85, 147));
    }

    #[test]
    fn walk_lengths_map_to_orders() {
        assert_eq!(walk_to_path_order(1), Ok(0));
        assert_eq!(walk_to_path_order(7), Ok(3));
        assert_eq!(walk_to_path_order(13), Ok(6));
        assert_eq!(walk_to_path_order(8), Err(Error::EvenWalkLength(8)));
        assert_eq!(walk_to_path_order(0), Err(Error::EvenWalkLength(0)));
    }

    #[test]
    fn config_validation() {
        assert!(WalkConfig::new(3, 0.3, 10, 1).validate().is_ok());
        assert!(WalkConfig::new(1, 0.3, 10, 1).validate().is_err());
        assert!(WalkConfig::new(3, 0.0, 10, 1).validate().is_err());
        assert!(WalkConfig::new(3, 1.0, 10, 1).validate().is_err());
        assert!(WalkConfig::new(3, f64::NAN, 10, 1).validate().is_err());
        assert!(WalkConfig::new(3, 0.3, 0, 1).validate().is_err());
        assert!(WalkConfig::new(3, 0.3, 10, 1)
            .with_max_steps(0)
            .validate()
            .is_err());
        assert!(WalkConfig::new(4, 0.5, 10, 1).validate().is_ok());
    }

    #[test]
    fn trials_are_reproducible_and_independent_of_order() {
        let cfg = WalkConfig::new(6, 0.45, 5_000, 7);
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        let sequential =
            (0..cfg.trials).fold(Tally::default(), |acc, t| acc.record(run_trial(&cfg, t)));
        assert_eq!(WalkStats::from_tally(&sequential), a);
        let other = simulate(&WalkConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.hits_right, other.hits_right);
    }

    #[test]
    fn right_absorbed_lengths_are_odd() {
        for m in 2..8 {
            let cfg = WalkConfig::new(m, 0.4, 2_000, m);
            for t in 0..cfg.trials {
                if let TrialOutcome::Right(len) = run_trial(&cfg, t) {
                    assert_eq!(len % 2, 1);
                    assert!(len >= 1);
                }
            }
            let stats = simulate(&cfg).unwrap();
            assert_eq!(stats.even_right_lengths, 0);
            assert_eq!(stats.shortest_right, Some(1));
        }
    }

    #[test]
    fn m_two_walks_take_one_step() {
        let stats = simulate(&WalkConfig::new(2, 0.3, 1_000, 1)).unwrap();
        assert_eq!(stats.l_hat, 1.0);
        assert_eq!(stats.l_se, 0.0);
        assert_eq!(stats.l_z(1.0), 0.0);
        assert_eq!(stats.hits_right + stats.hits_left, 1_000);
    }

    #[test]
    fn truncation_is_counted_not_estimated() {
        let stats = simulate(&WalkConfig::new(40, 0.5, 200, 3).with_max_steps(5)).unwrap();
        assert_eq!(
            stats.hits_right + stats.hits_left + stats.truncated,
            stats.trials_run
        );
        // from node 39 only the right end is reachable in 5 steps
        assert_eq!(stats.hits_left, 0);
        assert!(stats.truncated > 0);
        assert!(stats.is_unreliable());
        let pi = stats.hits_right as f64 / (stats.hits_right + stats.hits_left) as f64;
        assert_eq!(stats.pi_hat, pi);
    }

    #[test]
    fn half_probability_simulates() {
        let stats = simulate(&WalkConfig::new(4, 0.5, 100_000, 1)).unwrap();
        assert_eq!(stats.truncated, 0);
        // symmetric walk from 3 on 0..=4 reaches 4 first with probability 3/4
        assert!((stats.pi_hat - 0.75).abs() < 5.0 * stats.pi_se);
    }
}
