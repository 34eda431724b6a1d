use serde::Serialize;

use super::{pair_count, Sample};
use crate::distributions::normal_sf;
use crate::error::{Error, Result};

/// Below four observations the normal approximation of S is meaningless.
pub const MANN_KENDALL_MIN_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TieGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Values occurring more than once, with their multiplicities, in ascending
/// value order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TieSummary {
    pub groups: Vec<TieGroup>,
}

impl TieSummary {
    /// Number of tied groups.
    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum()
    }

    /// Σ t(t−1)/2, the number of tied pairs.
    pub fn tied_pairs(&self) -> u64 {
        self.groups.iter().map(|g| pair_count(g.multiplicity)).sum()
    }
}

/// Mann-Kendall output record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendTestResult {
    pub n: usize,
    pub s: i64,
    pub var_s: f64,
    pub z: f64,
    pub p_two_sided: f64,
    pub tau_a: f64,
    pub tau_b: f64,
    /// Null hypothesis of no trend rejected at `alpha`.
    pub h: bool,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KendallTau {
    pub tau_a: f64,
    pub tau_b: f64,
}

/// Groups equal values by exact comparison; no tolerance is applied.
pub fn tie_summary(sample: &Sample) -> TieSummary {
    let mut sorted = sample.values().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("sample values are finite"));
    let groups = sorted
        .chunk_by(|a, b| a == b)
        .filter(|run| run.len() > 1)
        .map(|run| TieGroup {
            value: run[0],
            multiplicity: run.len(),
        })
        .collect();
    TieSummary { groups }
}

/// Counts pairs i < j with x_i > x_j by merge sort, O(n log n).
fn strict_inversions(values: &[f64]) -> u64 {
    fn sort_count(v: &mut [f64], buf: &mut Vec<f64>) -> u64 {
        let n = v.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut count = sort_count(&mut v[..mid], buf) + sort_count(&mut v[mid..], buf);
        buf.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < n {
            if v[j] < v[i] {
                count += (mid - i) as u64;
                buf.push(v[j]);
                j += 1;
            } else {
                buf.push(v[i]);
                i += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..]);
        v.copy_from_slice(buf);
        count
    }
    let mut work = values.to_vec();
    let mut buf = Vec::with_capacity(values.len());
    sort_count(&mut work, &mut buf)
}

fn s_with_ties(sample: &Sample) -> (i64, TieSummary) {
    let ties = tie_summary(sample);
    let total = pair_count(sample.len()) as i64;
    let discordant = strict_inversions(sample.values()) as i64;
    let concordant = total - ties.tied_pairs() as i64 - discordant;
    (concordant - discordant, ties)
}

/// Mann-Kendall S = Σ_{i<j} sgn(x_j − x_i).
pub fn mk_s_statistic(sample: &Sample) -> Result<i64> {
    sample.require_len("Mann-Kendall S", 2)?;
    Ok(s_with_ties(sample).0)
}

/// Tie-corrected variance of S under the null hypothesis.
pub fn mk_variance(n: usize, ties: &TieSummary) -> Result<f64> {
    if n < 2 {
        return Err(Error::size("Var(S)", "n >= 2", n));
    }
    if ties.groups.iter().any(|g| g.multiplicity < 2) {
        return Err(Error::Validation(
            "tie groups must have multiplicity >= 2".into(),
        ));
    }
    if ties.total_multiplicity() > n {
        return Err(Error::Validation(format!(
            "tie multiplicities sum to {} but n = {n}",
            ties.total_multiplicity()
        )));
    }
    let term = |t: usize| {
        let t = t as i128;
        t * (t - 1) * (2 * t + 5)
    };
    let bracket = term(n)
        - ties
            .groups
            .iter()
            .map(|g| term(g.multiplicity))
            .sum::<i128>();
    if bracket < 0 {
        return Err(Error::Validation(format!(
            "tie summary inconsistent with n = {n}: negative variance"
        )));
    }
    Ok(bracket as f64 / 18.0)
}

/// Continuity-corrected standard normal score of S.
pub fn mk_z_statistic(s: i64, var_s: f64) -> Result<f64> {
    if s == 0 {
        return Ok(0.0);
    }
    if !(var_s > 0.0 && var_s.is_finite()) {
        return Err(Error::Degenerate(format!("Var(S) = {var_s} with S = {s}")));
    }
    let corrected = if s > 0 { s - 1 } else { s + 1 };
    Ok(corrected as f64 / var_s.sqrt())
}

/// p = 2(1 − Φ(|z|)).
pub fn two_sided_p_value(z: f64) -> f64 {
    (2.0 * normal_sf(z.abs())).min(1.0)
}

fn taus(n: usize, s: i64, ties: &TieSummary) -> Option<KendallTau> {
    let pairs = pair_count(n) as f64;
    let tau_a = s as f64 / pairs;
    let untied = pairs - ties.tied_pairs() as f64;
    if untied <= 0.0 {
        return None;
    }
    let tau_b = (s as f64 / (untied * pairs).sqrt()).clamp(-1.0, 1.0);
    Some(KendallTau { tau_a, tau_b })
}

/// Kendall's tau between the series and time (time assumed untied).
///
/// tau-b corrects the denominator for ties in the values; it is undefined
/// when every value is equal, which is reported as a degenerate error.
pub fn kendall_tau(sample: &Sample) -> Result<KendallTau> {
    sample.require_len("Kendall tau", 2)?;
    let (s, ties) = s_with_ties(sample);
    taus(sample.len(), s, &ties)
        .ok_or_else(|| Error::Degenerate("all values tied; tau-b undefined".into()))
}

/// Two-sided Mann-Kendall trend test at significance level `alpha`.
///
/// A constant series is not an error: it yields S = 0, Z = 0, p = 1, both
/// taus 0 and no rejection.
pub fn mann_kendall(sample: &Sample, alpha: f64) -> Result<TrendTestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Validation(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    sample.require_len("Mann-Kendall test", MANN_KENDALL_MIN_N)?;
    let n = sample.len();
    let (s, ties) = s_with_ties(sample);
    let var_s = mk_variance(n, &ties)?;
    let z = mk_z_statistic(s, var_s)?;
    let p_two_sided = two_sided_p_value(z);
    let tau = taus(n, s, &ties).unwrap_or(KendallTau {
        tau_a: 0.0,
        tau_b: 0.0,
    });
    Ok(TrendTestResult {
        n,
        s,
        var_s,
        z,
        p_two_sided,
        tau_a: tau.tau_a,
        tau_b: tau.tau_b,
        h: p_two_sided < alpha,
        alpha,
    })
}
