use serde::Serialize;

use super::Sample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnomalySeries {
    pub anomalies: Vec<f64>,
    pub source_mean: f64,
    /// Sample standard deviation (n − 1 denominator).
    pub source_sd: f64,
}

/// (x_i − mean) / sd with the sample standard deviation.
pub fn standardized_anomalies(sample: &Sample) -> Result<AnomalySeries> {
    sample.require_len("standardized anomalies", 2)?;
    let x = sample.values();
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let ss: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    let sd = (ss / (n - 1.0)).sqrt();
    if sd.is_nan() || sd <= 0.0 {
        return Err(Error::Degenerate(
            "zero variance; anomalies undefined for a constant series".into(),
        ));
    }
    Ok(AnomalySeries {
        anomalies: x.iter().map(|v| (v - mean) / sd).collect(),
        source_mean: mean,
        source_sd: sd,
    })
}
