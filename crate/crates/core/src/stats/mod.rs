//! Nonparametric trend statistics.
//!
//! All functions are pure; a [`Sample`] can be shared freely across threads
//! and many series may be tested in parallel without coordination.
//!
//! Conventions where the textbook presentations differ:
//!
//! - `Var(S)` divides the whole bracket `n(n−1)(2n+5) − Σ t(t−1)(2t+5)` by 18.
//! - `Z` uses the continuity correction `(S − 1)/√Var(S)` for `S > 0` and
//!   `(S + 1)/√Var(S)` for `S < 0`.
//! - The Sen confidence interval reads the ascending pair slopes at 1-based
//!   ranks `M1 = (N − Cα)/2` and `M2 + 1` with `M2 = (N + Cα)/2`,
//!   interpolating fractional ranks and clamping to the extreme slopes.

mod anomaly;
mod mann_kendall;
mod sample;
mod theil_sen;

pub use anomaly::{standardized_anomalies, AnomalySeries};
pub use mann_kendall::{
    kendall_tau, mann_kendall, mk_s_statistic, mk_variance, mk_z_statistic, tie_summary,
    two_sided_p_value, KendallTau, TieGroup, TieSummary, TrendTestResult, MANN_KENDALL_MIN_N,
};
pub use sample::Sample;
pub use theil_sen::{
    pairwise_slopes, sen_confidence_interval, sen_intercept, theil_sen, theil_sen_slope,
    SenEstimate, MAX_PAIRS,
};

/// Number of unordered pairs, n(n−1)/2.
pub(crate) fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Median of a slice, reordering it in place.
pub(crate) fn median_in_place(values: &mut [f64]) -> f64 {
    let n = values.len();
    debug_assert!(n > 0);
    let cmp = |a: &f64, b: &f64| a.total_cmp(b);
    let (_, upper, _) = values.select_nth_unstable_by(n / 2, cmp);
    let upper = *upper;
    if n % 2 == 1 {
        upper
    } else {
        let lower = values[..n / 2]
            .iter()
            .copied()
            .max_by(cmp)
            .expect("non-empty lower half");
        (lower + upper) / 2.0
    }
}
