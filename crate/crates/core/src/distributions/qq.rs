use serde::Serialize;

use super::normal_quantile;
use crate::error::Result;
use crate::stats::Sample;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QqPoint {
    pub theoretical: f64,
    pub sample: f64,
}

/// Normal Q-Q plot coordinates, ordered by theoretical quantile.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct QqData {
    pub points: Vec<QqPoint>,
}

/// Pairs the i-th order statistic with Φ⁻¹((i − 0.375)/(n + 0.25)) (Blom).
///
/// Upper-half quantiles are mirrored from the lower half so the theoretical
/// axis is exactly antisymmetric.
pub fn qq_points(sample: &Sample) -> Result<QqData> {
    let n = sample.len();
    let mut sorted = sample.values().to_vec();
    sorted.sort_unstable_by(f64::total_cmp);

    let denom = n as f64 + 0.25;
    let mut theoretical = vec![0.0; n];
    for i in 0..n / 2 {
        let q = normal_quantile((i as f64 + 1.0 - 0.375) / denom)?;
        theoretical[i] = q;
        theoretical[n - 1 - i] = -q;
    }

    Ok(QqData {
        points: theoretical
            .into_iter()
            .zip(sorted)
            .map(|(theoretical, sample)| QqPoint {
                theoretical,
                sample,
            })
            .collect(),
    })
}
