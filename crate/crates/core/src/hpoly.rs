//! The `H_m` polynomial family and the auxiliary functions `g_i`, `f_i`.
//!
//! With `x = p(1-p)`:
//!
//! - `g_i(p) = (1-p)^i - p^i`, satisfying `g_i = g_{i+1} + x g_{i-1}`;
//! - `f_i(p) = g_{i-1}(p) / g_i(p)`, which equals `Pi_{i,p} / p`;
//! - `h_i(p) = g_i(p) / g_1(p)` is a polynomial in `x`, namely `H_i(x)`.
//!
//! `H_1 = H_2 = 1` and `H_m = H_{m-1} - x H_{m-2}`. Up to a change of
//! variable this is a Chebyshev polynomial of the second kind, and its
//! coefficients are signed binomials: `[x^j] H_m = (-1)^j C(m-1-j, j)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{BigRational, IntPoly};

/// Append-only cache of `H_1, H_2, ...`.
///
/// Requesting `H_m` builds every lower index as a side effect.
#[derive(Clone, Debug)]
pub struct HFamily {
    // cache[i] holds H_{i+1}
    cache: Vec<IntPoly>,
}

impl Default for HFamily {
    fn default() -> Self {
        Self::new()
    }
}

impl HFamily {
    pub fn new() -> Self {
        Self {
            cache: vec![IntPoly::one(), IntPoly::one()],
        }
    }

    /// Number of indices currently cached.
    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    fn cached(&self, m: usize) -> Option<&IntPoly> {
        m.checked_sub(1).and_then(|i| self.cache.get(i))
    }

    fn extend_to(&mut self, m: usize) {
        while self.cache.len() < m {
            let n = self.cache.len();
            let next = &self.cache[n - 1] - &self.cache[n - 2].shift(1);
            self.cache.push(next);
        }
    }

    pub fn get(&mut self, m: usize) -> Result<&IntPoly> {
        if m == 0 {
            return Err(Error::IndexTooSmall { min: 1, got: 0 });
        }
        self.extend_to(m);
        Ok(&self.cache[m - 1])
    }
}

fn shared_family() -> &'static RwLock<HFamily> {
    static FAMILY: OnceLock<RwLock<HFamily>> = OnceLock::new();
    FAMILY.get_or_init(|| RwLock::new(HFamily::new()))
}

/// Returns `H_m` from a process-wide cache.
pub fn h_poly(m: usize) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::IndexTooSmall { min: 1, got: 0 });
    }
    let family = shared_family();
    if let Some(h) = family.read().expect("H cache poisoned").cached(m) {
        return Ok(h.clone());
    }
    let mut guard = family.write().expect("H cache poisoned");
    guard.get(m).cloned()
}

/// `[x^j] H_m` from the signed-binomial closed form, independent of the
/// recurrence.
pub fn h_coeff_closed(m: usize, j: usize) -> BigInt {
    assert!(m >= 1, "H_m is indexed from 1");
    if 2 * j > m - 1 {
        return BigInt::zero();
    }
    let c = BigInt::from(num_integer::binomial(
        BigUint::from(m - 1 - j),
        BigUint::from(j),
    ));
    if j.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// `g_i(p) = (1-p)^i - p^i`.
pub fn g_eval(i: usize, p: &BigRational) -> BigRational {
    let q = BigRational::one() - p;
    num_traits::pow(q, i) - num_traits::pow(p.clone(), i)
}

/// `x = p(1-p)`.
pub fn x_of(p: &BigRational) -> BigRational {
    p * (BigRational::one() - p)
}

/// Accepts `p` in the open unit interval, excluding `1/2`.
pub(crate) fn check_probability(p: &BigRational) -> Result<()> {
    if *p <= BigRational::zero() || *p >= BigRational::one() {
        return Err(Error::ProbabilityOutOfRange(p.to_string()));
    }
    if *p == BigRational::new(1.into(), 2.into()) {
        return Err(Error::HalfProbability);
    }
    Ok(())
}

/// `f_i(p) = g_{i-1}(p) / g_i(p)` for `i >= 2`.
pub fn f_eval(i: usize, p: &BigRational) -> Result<BigRational> {
    if i < 2 {
        return Err(Error::IndexTooSmall {
            min: 2,
            got: i as u64,
        });
    }
    check_probability(p)?;
    Ok(g_eval(i - 1, p) / g_eval(i, p))
}
