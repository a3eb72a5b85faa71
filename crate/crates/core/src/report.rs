//! Grid comparison of the generating-function counts against the oracles.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::Result;
use crate::genfunc::count_table;
use crate::oracle::BRUTE_FORCE_LIMIT;
use crate::oracle::{count_paths_bruteforce, count_paths_dp, series_bounded_cf, PathSpec};

/// One grid cell where the routes disagree. `bruteforce` is `None` when the
/// order is past the enumeration limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub genfunc: BigUint,
    pub bruteforce: Option<BigUint>,
    pub dp: BigUint,
    pub continued_fraction: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub n_max: usize,
    pub k_max: usize,
    pub cells_checked: usize,
    /// Cells where the brute-force count took part.
    pub bruteforce_cells: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn all_agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares all four counting routes on `0..=n_max` x `0..=k_max`.
///
/// Brute force runs only for `k <= BRUTE_FORCE_LIMIT`. Errors from the
/// generating function (an inexact division) or from the brute-force filter
/// check abort the comparison.
pub fn compare_grid(n_max: usize, k_max: usize) -> Result<OracleReport> {
    let rows = (0..=n_max)
        .into_par_iter()
        .map(|n| compare_row(n, k_max))
        .collect::<Result<Vec<_>>>()?;
    let mut report = OracleReport {
        n_max,
        k_max,
        cells_checked: 0,
        bruteforce_cells: 0,
        mismatches: Vec::new(),
    };
    for (cells, bf_cells, mismatches) in rows {
        report.cells_checked += cells;
        report.bruteforce_cells += bf_cells;
        report.mismatches.extend(mismatches);
    }
    Ok(report)
}

fn compare_row(n: usize, k_max: usize) -> Result<(usize, usize, Vec<Mismatch>)> {
    let table = count_table(n, k_max)?;
    let cf = series_bounded_cf(n, k_max);
    let mut bf_cells = 0;
    let mut mismatches = Vec::new();
    for (k, (gf, cf)) in table.counts.into_iter().zip(cf).enumerate() {
        let spec = PathSpec::new(k, n);
        let dp = count_paths_dp(spec);
        let bruteforce = if k <= BRUTE_FORCE_LIMIT {
            bf_cells += 1;
            Some(count_paths_bruteforce(spec)?)
        } else {
            None
        };
        let agree = gf == dp && gf == cf && bruteforce.as_ref().is_none_or(|b| *b == gf);
        if !agree {
            mismatches.push(Mismatch {
                n,
                k,
                genfunc: gf,
                bruteforce,
                dp,
                continued_fraction: cf,
            });
        }
    }
    Ok((k_max + 1, bf_cells, mismatches))
}
