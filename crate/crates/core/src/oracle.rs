//! Independent ways to count height-bounded Dyck paths.
//!
//! None of these touch the generating-function code; they exist to check it.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest order the brute-force enumerator accepts (`2^28` step sequences).
pub const BRUTE_FORCE_LIMIT: usize = 14;

/// Dyck paths of order `k` (so `2k` steps) whose height never exceeds `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathSpec {
    pub k: usize,
    pub n: usize,
}

impl PathSpec {
    pub fn new(k: usize, n: usize) -> Self {
        Self { k, n }
    }
}

/// Counts from the two brute-force filters: every peak at height `<= n`, and
/// every node at height `<= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterCounts {
    pub by_peaks: u64,
    pub by_height: u64,
}

/// Enumerates every up/down sequence with `k` up steps among `2k` and applies
/// both filters. Sequences with any other number of up steps cannot return to
/// the axis, so they are skipped wholesale.
pub fn bruteforce_filter_counts(spec: PathSpec) -> Result<FilterCounts> {
    let PathSpec { k, n } = spec;
    if k > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            k,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let steps = 2 * k;
    let end: u64 = 1 << steps;
    let mut counts = FilterCounts {
        by_peaks: 0,
        by_height: 0,
    };
    // bit i set = step i goes up
    let mut mask: u64 = (1 << k) - 1;
    loop {
        if let Some((peak_max, height_max)) = profile(mask, steps) {
            counts.by_peaks += u64::from(peak_max <= n);
            counts.by_height += u64::from(height_max <= n);
        }
        if mask == 0 {
            break;
        }
        // next mask with the same popcount (Gosper)
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
        if mask >= end {
            break;
        }
    }
    Ok(counts)
}

/// `(highest peak, highest node)` of the step sequence, or `None` if it dips
/// below the axis.
fn profile(mask: u64, steps: usize) -> Option<(usize, usize)> {
    let mut height = 0usize;
    let mut peak_max = 0;
    let mut height_max = 0;
    let mut prev_up = false;
    for i in 0..steps {
        let up = mask >> i & 1 == 1;
        if up {
            height += 1;
            height_max = height_max.max(height);
        } else {
            if prev_up {
                peak_max = peak_max.max(height);
            }
            height = height.checked_sub(1)?;
        }
        prev_up = up;
    }
    debug_assert_eq!(height, 0);
    Some((peak_max, height_max))
}

/// Exhaustive count. Refuses orders above [`BRUTE_FORCE_LIMIT`] and fails if
/// the peak filter and the height filter ever disagree.
pub fn count_paths_bruteforce(spec: PathSpec) -> Result<BigUint> {
    let c = bruteforce_filter_counts(spec)?;
    if c.by_peaks != c.by_height {
        return Err(Error::FilterDisagreement {
            k: spec.k,
            n: spec.n,
            by_peaks: c.by_peaks,
            by_height: c.by_height,
        });
    }
    Ok(BigUint::from(c.by_height))
}

/// Transfer-matrix count over (step, height) states with a rolling row.
pub fn count_paths_dp(spec: PathSpec) -> BigUint {
    let PathSpec { k, n } = spec;
    let cap = n.min(k);
    let mut row = vec![BigUint::zero(); cap + 1];
    row[0] = BigUint::one();
    for _ in 0..2 * k {
        let mut next = vec![BigUint::zero(); cap + 1];
        for (h, ways) in row.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            if h < cap {
                next[h + 1] += ways;
            }
            if h > 0 {
                next[h - 1] += ways;
            }
        }
        row = next;
    }
    row.swap_remove(0)
}

/// `A(n, k)` for every `k <= kmax` from one transfer-matrix pass: the count
/// of order `k` is the number of ways to sit at height 0 after `2k` steps.
pub fn bounded_counts_dp(n: usize, kmax: usize) -> Vec<BigUint> {
    let cap = n.min(kmax);
    let mut row = vec![BigUint::zero(); cap + 1];
    row[0] = BigUint::one();
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(BigUint::one());
    for step in 1..=2 * kmax {
        let mut next = vec![BigUint::zero(); cap + 1];
        for (h, ways) in row.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            if h < cap {
                next[h + 1] += ways;
            }
            if h > 0 {
                next[h - 1] += ways;
            }
        }
        row = next;
        if step % 2 == 0 {
            out.push(row[0].clone());
        }
    }
    out
}

/// `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> BigUint {
    // C_{i+1} = C_i * 2(2i+1) / (i+2), exact at every step
    (0..k).fold(BigUint::one(), |c, i| c * (2 * (2 * i + 1)) / (i + 2))
}

/// Series coefficients of the height-`n` convergent
/// `F_0 = 1`, `F_h = 1 / (1 - z F_{h-1})`, truncated after `z^kmax`.
pub fn series_bounded_cf(n: usize, kmax: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::zero(); kmax + 1];
    f[0] = BigUint::one();
    for _ in 0..n {
        // g = 1/(1 - u) with u = z f, i.e. g_k = sum_{j=1..k} f_{j-1} g_{k-j}
        let mut g: Vec<BigUint> = Vec::with_capacity(kmax + 1);
        g.push(BigUint::one());
        for k in 1..=kmax {
            let mut acc = BigUint::zero();
            for j in 1..=k {
                if !f[j - 1].is_zero() {
                    acc += &f[j - 1] * &g[k - j];
                }
            }
            g.push(acc);
        }
        f = g;
    }
    f
}
