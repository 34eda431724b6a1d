use crate::error::{Error, Result};

/// An ordered series of finite observations with optional time coordinates.
///
/// Without explicit times the series is treated as equally spaced at
/// positions 1, 2, …, n.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    times: Option<Vec<f64>>,
}

impl Sample {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        validate_values(&values)?;
        Ok(Self {
            values,
            times: None,
        })
    }

    /// Times must be finite and strictly increasing, one per value.
    pub fn with_times(values: Vec<f64>, times: Vec<f64>) -> Result<Self> {
        validate_values(&values)?;
        if times.len() != values.len() {
            return Err(Error::Validation(format!(
                "{} values but {} time coordinates",
                values.len(),
                times.len()
            )));
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(Error::Validation(format!(
                "time coordinate at index {i} is not finite"
            )));
        }
        if let Some(i) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Validation(format!(
                "time coordinates must be strictly increasing (index {} = {}, index {} = {})",
                i,
                times[i],
                i + 1,
                times[i + 1]
            )));
        }
        Ok(Self {
            values,
            times: Some(times),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn times(&self) -> Option<&[f64]> {
        self.times.as_deref()
    }

    /// Time coordinate of observation `i`, falling back to its 1-based
    /// position.
    pub fn time_at(&self, i: usize) -> f64 {
        match &self.times {
            Some(t) => t[i],
            None => (i + 1) as f64,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn require_len(&self, what: &'static str, min: usize) -> Result<()> {
        if self.len() < min {
            Err(Error::size(
                what,
                format!("at least {min} observations"),
                self.len(),
            ))
        } else {
            Ok(())
        }
    }
}

fn validate_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::size("sample", "at least 1 observation", 0));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Validation(format!(
            "value at index {i} is not finite ({})",
            values[i]
        )));
    }
    Ok(())
}
