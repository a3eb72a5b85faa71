//! Exact counting of Dyck paths with bounded peak height.
//!
//! The count `A(n, k)` of Dyck paths of order `k` whose peaks never exceed
//! height `n` is read off a closed-form rational generating function
//!
//! ```text
//! sum_k (2k+1) A(n,k) x^k = ((-2n-3) x^(n+1) + H_{2n+3}(x)) / ((1-4x) H_{n+2}(x)^2)
//! ```
//!
//! where `H_1 = H_2 = 1` and `H_m = H_{m-1} - x H_{m-2}`. The identity comes
//! from a gambler's-ruin walk on nodes `0..=m` started at `m-1`: the walks that
//! reach `m` before `0` are in bijection with Dyck paths of height at most
//! `m-2`, and `x = p(1-p)`.
//!
//! Modules:
//! - [`poly`]: dense integer polynomials and exact rational evaluation.
//! - [`hpoly`]: the `H_m` family and the auxiliary `g_i`, `f_i` functions.
//! - [`genfunc`]: the generating function and coefficient extraction.
//! - [`oracle`]: brute force, transfer-matrix and continued-fraction counts.
//! - [`walk`]: exact hitting probabilities/times and a Monte Carlo simulator.
//! - [`report`]: grid comparison of all counting routes.

pub mod error;
pub mod genfunc;
pub mod hpoly;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod walk;

pub use error::{Error, Result};
pub use genfunc::{count_table, gf_denominator, gf_numerator, series_expand, CountTable};
pub use hpoly::{f_eval, g_eval, h_coeff_closed, h_poly, HFamily};
pub use oracle::{catalan, count_paths_bruteforce, count_paths_dp, series_bounded_cf, PathSpec};
pub use poly::{BigRational, IntPoly};
pub use report::{compare_grid, Mismatch, OracleReport};
pub use walk::{
    expval_check, fl_closed, l_exact, pi_closed, simulate, walk_to_path_order, WalkConfig,
    WalkStats,
};
