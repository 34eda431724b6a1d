use serde::Serialize;

use super::{median_in_place, mk_variance, pair_count, tie_summary, Sample, MANN_KENDALL_MIN_N};
use crate::distributions::normal_quantile;
use crate::error::{Error, Result};

/// Upper bound on materialised pair slopes (≈ 400 MB of f64), reached near
/// n = 10 000. Aggregate finer data (e.g. hourly to daily) before fitting.
pub const MAX_PAIRS: u64 = 50_000_000;

/// Theil-Sen output record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SenEstimate {
    /// Value units per time unit.
    pub slope: f64,
    pub intercept: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub confidence: f64,
    pub n_pairs: u64,
}

/// All N = n(n−1)/2 slopes (x_k − x_j)/(t_k − t_j), j < k, in pair order.
pub fn pairwise_slopes(sample: &Sample) -> Result<Vec<f64>> {
    sample.require_len("Theil-Sen slope", 2)?;
    let n = sample.len();
    let pairs = pair_count(n);
    if pairs > MAX_PAIRS {
        return Err(Error::size(
            "Theil-Sen slope",
            format!("at most {MAX_PAIRS} pairs"),
            pairs as usize,
        ));
    }
    let x = sample.values();
    let t: Vec<f64> = (0..n).map(|i| sample.time_at(i)).collect();
    let mut slopes = Vec::with_capacity(pairs as usize);
    for j in 0..n {
        for k in j + 1..n {
            slopes.push((x[k] - x[j]) / (t[k] - t[j]));
        }
    }
    Ok(slopes)
}

/// Sen's slope: the median of all pairwise slopes.
pub fn theil_sen_slope(sample: &Sample) -> Result<f64> {
    let mut slopes = pairwise_slopes(sample)?;
    Ok(median_in_place(&mut slopes))
}

/// Median of the residuals x_i − slope·t_i.
pub fn sen_intercept(sample: &Sample, slope: f64) -> Result<f64> {
    sample.require_len("Sen intercept", 2)?;
    if !slope.is_finite() {
        return Err(Error::Validation(format!(
            "slope must be finite, got {slope}"
        )));
    }
    let mut residuals: Vec<f64> = sample
        .values()
        .iter()
        .enumerate()
        .map(|(i, x)| x - slope * sample.time_at(i))
        .collect();
    Ok(median_in_place(&mut residuals))
}

/// Order statistic at a 1-based, possibly fractional rank, clamped to the
/// extremes.
fn at_rank(sorted: &[f64], rank: f64) -> f64 {
    let n = sorted.len();
    if rank <= 1.0 {
        return sorted[0];
    }
    if rank >= n as f64 {
        return sorted[n - 1];
    }
    let lo = rank.floor() as usize;
    let frac = rank - lo as f64;
    let (a, b) = (sorted[lo - 1], sorted[lo]);
    (a + frac * (b - a)).clamp(a, b)
}

fn interval_from_sorted(sorted: &[f64], var_s: f64, confidence: f64) -> Result<(f64, f64)> {
    let alpha = 1.0 - confidence;
    let c_alpha = normal_quantile(1.0 - alpha / 2.0)? * var_s.sqrt();
    let n_pairs = sorted.len() as f64;
    let m1 = (n_pairs - c_alpha) / 2.0;
    let m2 = (n_pairs + c_alpha) / 2.0;
    Ok((at_rank(sorted, m1), at_rank(sorted, m2 + 1.0)))
}

fn check_confidence(confidence: f64) -> Result<()> {
    if confidence > 0.0 && confidence < 1.0 {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )))
    }
}

/// Rank-based confidence interval for Sen's slope.
pub fn sen_confidence_interval(sample: &Sample, confidence: f64) -> Result<(f64, f64)> {
    check_confidence(confidence)?;
    sample.require_len("Sen confidence interval", MANN_KENDALL_MIN_N)?;
    let mut slopes = pairwise_slopes(sample)?;
    slopes.sort_unstable_by(f64::total_cmp);
    let var_s = mk_variance(sample.len(), &tie_summary(sample))?;
    interval_from_sorted(&slopes, var_s, confidence)
}

/// Slope, intercept and confidence interval from a single pass over the
/// pair slopes.
pub fn theil_sen(sample: &Sample, confidence: f64) -> Result<SenEstimate> {
    check_confidence(confidence)?;
    sample.require_len("Theil-Sen estimate", MANN_KENDALL_MIN_N)?;
    let mut slopes = pairwise_slopes(sample)?;
    slopes.sort_unstable_by(f64::total_cmp);
    let n_pairs = slopes.len();
    let slope = if n_pairs % 2 == 1 {
        slopes[n_pairs / 2]
    } else {
        (slopes[n_pairs / 2 - 1] + slopes[n_pairs / 2]) / 2.0
    };
    let var_s = mk_variance(sample.len(), &tie_summary(sample))?;
    let (ci_lower, ci_upper) = interval_from_sorted(&slopes, var_s, confidence)?;
    Ok(SenEstimate {
        slope,
        intercept: sen_intercept(sample, slope)?,
        ci_lower,
        ci_upper,
        confidence,
        n_pairs: n_pairs as u64,
    })
}
