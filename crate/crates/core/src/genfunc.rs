//! The rational generating function of `(2k+1) A(n,k)` and coefficient
//! extraction by power-series division.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hpoly::h_poly;
use crate::poly::IntPoly;

/// `A(n, 0..=kmax)`: Dyck path counts of every order up to `kmax` with peak
/// height at most `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub n: usize,
    pub kmax: usize,
    pub counts: Vec<BigUint>,
}

impl CountTable {
    pub fn get(&self, k: usize) -> Option<&BigUint> {
        self.counts.get(k)
    }
}

/// `(-2n-3) x^(n+1) + H_{2n+3}(x)`.
///
/// This is `x^(m-1)(1-2m) + H_{2m-1}(x)` with `m = n + 2`.
pub fn gf_numerator(n: usize) -> IntPoly {
    let correction = IntPoly::monomial(-(2 * n as i64 + 3), n + 1);
    let h = h_poly(2 * n + 3).expect("index is positive");
    &correction + &h
}

/// `(1 - 4x) H_{n+2}(x)^2`.
pub fn gf_denominator(n: usize) -> IntPoly {
    let h = h_poly(n + 2).expect("index is positive");
    &IntPoly::from_i64s(&[1, -4]) * &(&h * &h)
}

/// First `kmax + 1` coefficients of the power series `num / den`.
///
/// Requires `den(0) = 1`, which keeps every coefficient integral:
/// `c_k = num_k - sum_{j=1..k} den_j c_{k-j}`.
pub fn series_expand(num: &IntPoly, den: &IntPoly, kmax: usize) -> Result<Vec<BigInt>> {
    let d0 = den.coeff(0);
    if !d0.is_one() {
        return Err(Error::NonUnitConstant(d0.to_string()));
    }
    let den = den.coeffs();
    let mut out: Vec<BigInt> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut c = num.coeff(k);
        for j in 1..den.len().min(k + 1) {
            if !den[j].is_zero() {
                c -= &den[j] * &out[k - j];
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// Series coefficients of `sum_k (2k+1) A(n,k) x^k` up to `kmax`.
pub fn weighted_series(n: usize, kmax: usize) -> Result<Vec<BigInt>> {
    series_expand(&gf_numerator(n), &gf_denominator(n), kmax)
}

/// `A(n, k)` for `0 <= k <= kmax`, read off the generating function.
///
/// Each series coefficient must be an exact multiple of `2k+1`; anything else
/// is reported as [`Error::InexactDivision`].
pub fn count_table(n: usize, kmax: usize) -> Result<CountTable> {
    let series = weighted_series(n, kmax)?;
    let counts = series
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let divisor = 2 * k as u64 + 1;
            let (q, r) = c.div_rem(&BigInt::from(divisor));
            if !r.is_zero() || q.sign() == Sign::Minus {
                return Err(Error::InexactDivision {
                    n,
                    k,
                    coeff: c.to_string(),
                    divisor,
                });
            }
            Ok(q.into_parts().1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable { n, kmax, counts })
}
