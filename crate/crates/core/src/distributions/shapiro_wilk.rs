//! Shapiro-Wilk W test using Royston's AS R94 approximations for the
//! coefficients and the null distribution of W.

use std::f64::consts::PI;

use serde::Serialize;

use super::{normal_quantile, normal_sf};
use crate::error::{Error, Result};
use crate::stats::Sample;

pub const SHAPIRO_WILK_MIN_N: usize = 3;
pub const SHAPIRO_WILK_MAX_N: usize = 5000;

// Polynomial coefficients, ascending powers.
const C1: [f64; 6] = [0.0, 0.221_157, -0.147_981, -2.071_19, 4.434_685, -2.706_056];
const C2: [f64; 6] = [
    0.0, 0.042_981, -0.293_762, -1.752_461, 5.682_633, -3.582_633,
];
const C3: [f64; 4] = [0.544, -0.399_78, 0.025_054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.778_57, 0.062_767, -0.002_032_2];
const C5: [f64; 4] = [-1.5861, -0.310_82, -0.083_751, 0.003_891_5];
const C6: [f64; 3] = [-0.4803, -0.082_676, 0.003_030_2];
const G: [f64; 2] = [-2.273, 0.459];

/// Smallest p-value reported when W falls beyond the small-sample bound.
const P_FLOOR: f64 = 1e-19;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalityResult {
    pub n: usize,
    pub w: f64,
    pub p_value: f64,
}

impl NormalityResult {
    /// Normality is not rejected at level `alpha`.
    pub fn is_normal_at(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

fn poly(coefs: &[f64], x: f64) -> f64 {
    coefs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Upper-half coefficients a_1 ≥ … ≥ a_{n/2} > 0 (a_1 multiplies the
/// largest order statistic).
fn coefficients(n: usize) -> Result<Vec<f64>> {
    let half = n / 2;
    if n == 3 {
        return Ok(vec![0.5_f64.sqrt()]);
    }
    let an25 = n as f64 + 0.25;
    let m = (0..half)
        .map(|i| normal_quantile((i as f64 + 1.0 - 0.375) / an25).map(|q| -q))
        .collect::<Result<Vec<_>>>()?;
    let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / (n as f64).sqrt();
    let a1 = poly(&C1, rsn) + m[0] / ssumm2;

    let mut a = vec![0.0; half];
    a[0] = a1;
    let (first_scaled, fac) = if n > 5 {
        let a2 = m[1] / ssumm2 + poly(&C2, rsn);
        a[1] = a2;
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
            .sqrt();
        (2, fac)
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        (1, fac)
    };
    for i in first_scaled..half {
        a[i] = m[i] / fac;
    }
    Ok(a)
}

/// Significance of W for sample size n under normality.
pub(crate) fn p_value(w: f64, n: usize) -> f64 {
    if n == 3 {
        let p = 6.0 / PI * (w.sqrt().asin() - PI / 3.0);
        return p.clamp(0.0, 1.0);
    }
    let w1 = 1.0 - w;
    if w1 <= 0.0 {
        return 1.0;
    }
    let y = w1.ln();
    let an = n as f64;
    if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return P_FLOOR;
        }
        let y = -(gamma - y).ln();
        let m = poly(&C3, an);
        let s = poly(&C4, an).exp();
        normal_sf((y - m) / s)
    } else {
        let ln_n = an.ln();
        let m = poly(&C5, ln_n);
        let s = poly(&C6, ln_n).exp();
        normal_sf((y - m) / s)
    }
}

/// Shapiro-Wilk test of normality for 3 ≤ n ≤ 5000.
pub fn shapiro_wilk(sample: &Sample) -> Result<NormalityResult> {
    let n = sample.len();
    if !(SHAPIRO_WILK_MIN_N..=SHAPIRO_WILK_MAX_N).contains(&n) {
        return Err(Error::size(
            "Shapiro-Wilk test",
            format!("{SHAPIRO_WILK_MIN_N} <= n <= {SHAPIRO_WILK_MAX_N}"),
            n,
        ));
    }
    let mut x = sample.values().to_vec();
    x.sort_unstable_by(f64::total_cmp);
    let range = x[n - 1] - x[0];
    if range <= 0.0 {
        return Err(Error::Degenerate("zero range; W undefined".into()));
    }

    let a = coefficients(n)?;
    // Full antisymmetric weight vector, paired with ascending order statistics.
    let weight = |i: usize| {
        let j = n - 1 - i;
        match i.cmp(&j) {
            std::cmp::Ordering::Less => -a[i],
            std::cmp::Ordering::Greater => a[j],
            std::cmp::Ordering::Equal => 0.0,
        }
    };

    // 1 − W is evaluated as (√(ssa·ssx) − sax)(√(ssa·ssx) + sax)/(ssa·ssx)
    // to keep precision when W is close to one.
    let nf = n as f64;
    let mean_a = (0..n).map(weight).sum::<f64>() / nf;
    let mean_x = x.iter().map(|v| v / range).sum::<f64>() / nf;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for (i, xi) in x.iter().enumerate() {
        let da = weight(i) - mean_a;
        let dx = xi / range - mean_x;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }
    let root = (ssa * ssx).sqrt();
    let w1 = (root - sax) * (root + sax) / (ssa * ssx);
    let w = 1.0 - w1;

    Ok(NormalityResult {
        n,
        w,
        p_value: p_value(w, n),
    })
}
