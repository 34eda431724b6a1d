//! Climate time-series model: observations, seasons, annual and seasonal
//! aggregation, decadal change and regional ranking.
//!
//! Season boundaries follow the Delhi calendar:
//!
//! | Season       | Months              |
//! |--------------|---------------------|
//! | Winter       | Dec, Jan, Feb       |
//! | Summer       | Mar, Apr, May, Jun  |
//! | Monsoon      | Jul, Aug, Sep       |
//! | Post-monsoon | Oct, Nov            |
//!
//! March, which falls between the named winter and summer periods, is
//! counted with the pre-monsoon summer so every date has a season.
//! December belongs to the winter of the following year.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use chrono::{Datelike, NaiveDate, NaiveDateTime};
use serde::Serialize;

use crate::error::{Error, Result};

/// Sanity bounds for air temperature in °C.
pub const TEMPERATURE_BOUNDS: (f64, f64) = (-90.0, 60.0);

/// Default coverage thresholds for [`filter_by_coverage`].
pub const DEFAULT_MIN_DAILY_PER_YEAR: usize = 300;
pub const DEFAULT_MIN_HOURLY_PER_YEAR: usize = 7000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observation {
    pub timestamp: NaiveDateTime,
    /// °C
    pub value: f64,
}

impl Observation {
    pub fn new(timestamp: NaiveDateTime, value: f64) -> Result<Self> {
        let (lo, hi) = TEMPERATURE_BOUNDS;
        if !value.is_finite() || value < lo || value > hi {
            return Err(Error::Validation(format!(
                "temperature {value} at {timestamp} outside [{lo}, {hi}] °C"
            )));
        }
        Ok(Self { timestamp, value })
    }

    pub fn year(&self) -> i32 {
        self.timestamp.year()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Season {
    Winter,
    Summer,
    Monsoon,
    PostMonsoon,
}

impl Season {
    pub fn as_str(self) -> &'static str {
        match self {
            Season::Winter => "winter",
            Season::Summer => "summer",
            Season::Monsoon => "monsoon",
            Season::PostMonsoon => "post-monsoon",
        }
    }
}

impl fmt::Display for Season {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A season within its season-year; orders chronologically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SeasonLabel {
    pub season_year: i32,
    pub season: Season,
}

pub fn classify_season(date: NaiveDate) -> SeasonLabel {
    let year = date.year();
    let (season, season_year) = match date.month() {
        12 => (Season::Winter, year + 1),
        1 | 2 => (Season::Winter, year),
        3..=6 => (Season::Summer, year),
        7..=9 => (Season::Monsoon, year),
        _ => (Season::PostMonsoon, year),
    };
    SeasonLabel {
        season_year,
        season,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnualSummary {
    pub year: i32,
    pub t_max: f64,
    pub t_min: f64,
    /// Sample standard deviation; 0 for a single observation.
    pub std_dev: f64,
    pub count: usize,
}

fn require_non_empty(what: &'static str, observations: &[Observation]) -> Result<()> {
    if observations.is_empty() {
        Err(Error::size(what, "at least 1 observation", 0))
    } else {
        Ok(())
    }
}

fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if values.iter().all(|v| *v == values[0]) {
        return 0.0;
    }
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
}

/// Per calendar year: extremes, sample standard deviation and count,
/// computed on the observations as given (raw hourly values stay hourly).
pub fn aggregate_annual(observations: &[Observation]) -> Result<Vec<AnnualSummary>> {
    require_non_empty("annual aggregation", observations)?;
    let mut by_year: BTreeMap<i32, Vec<f64>> = BTreeMap::new();
    for o in observations {
        by_year.entry(o.year()).or_default().push(o.value);
    }
    Ok(by_year
        .into_iter()
        .map(|(year, values)| AnnualSummary {
            year,
            t_max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            t_min: values.iter().copied().fold(f64::INFINITY, f64::min),
            std_dev: sample_sd(&values),
            count: values.len(),
        })
        .collect())
}

/// Drops years with fewer than `min_count` observations.
pub fn filter_by_coverage(summaries: &[AnnualSummary], min_count: usize) -> Vec<AnnualSummary> {
    summaries
        .iter()
        .filter(|s| s.count >= min_count)
        .copied()
        .collect()
}

/// Arithmetic mean per (season, season-year); seasons without data are
/// absent.
pub fn aggregate_seasonal(observations: &[Observation]) -> Result<BTreeMap<SeasonLabel, f64>> {
    require_non_empty("seasonal aggregation", observations)?;
    let mut sums: BTreeMap<SeasonLabel, (f64, usize)> = BTreeMap::new();
    for o in observations {
        let e = sums.entry(classify_season(o.timestamp.date())).or_default();
        e.0 += o.value;
        e.1 += 1;
    }
    Ok(sums
        .into_iter()
        .map(|(k, (sum, count))| (k, sum / count as f64))
        .collect())
}

/// Daily arithmetic means, one observation per calendar day stamped at
/// midnight, in date order.
pub fn daily_means(observations: &[Observation]) -> Vec<Observation> {
    let mut days: BTreeMap<NaiveDate, (f64, usize)> = BTreeMap::new();
    for o in observations {
        let e = days.entry(o.timestamp.date()).or_default();
        e.0 += o.value;
        e.1 += 1;
    }
    days.into_iter()
        .map(|(day, (sum, count))| Observation {
            timestamp: day.and_hms_opt(0, 0, 0).expect("midnight is valid"),
            value: sum / count as f64,
        })
        .collect()
}

/// Calendar-year means, ascending by year.
pub fn annual_means(observations: &[Observation]) -> Vec<(i32, f64)> {
    let mut years: BTreeMap<i32, (f64, usize)> = BTreeMap::new();
    for o in observations {
        let e = years.entry(o.year()).or_default();
        e.0 += o.value;
        e.1 += 1;
    }
    years
        .into_iter()
        .map(|(y, (sum, count))| (y, sum / count as f64))
        .collect()
}

/// Mean over `[end_year − 9, end_year]` minus mean over
/// `[end_year − 19, end_year − 10]`.
pub fn decadal_change(annual_means: &[(i32, f64)], end_year: i32) -> Result<f64> {
    let mut by_year = BTreeMap::new();
    for &(year, mean) in annual_means {
        if !mean.is_finite() {
            return Err(Error::Validation(format!(
                "annual mean for {year} is not finite"
            )));
        }
        if by_year.insert(year, mean).is_some() {
            return Err(Error::Validation(format!("year {year} listed twice")));
        }
    }
    let earlier = end_year - 19..=end_year - 10;
    let later = end_year - 9..=end_year;
    let missing: Vec<i32> = earlier
        .clone()
        .chain(later.clone())
        .filter(|y| !by_year.contains_key(y))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Coverage { missing });
    }
    let decade_mean =
        |years: std::ops::RangeInclusive<i32>| years.map(|y| by_year[&y]).sum::<f64>() / 10.0;
    Ok(decade_mean(later) - decade_mean(earlier))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionChange {
    pub region: String,
    /// °C
    pub change: f64,
}

/// Descending by change, ties by region name ascending.
pub fn rank_regions(changes: &[RegionChange]) -> Result<Vec<RegionChange>> {
    if changes.is_empty() {
        return Err(Error::size("region ranking", "at least 1 region", 0));
    }
    let mut seen = HashSet::new();
    for c in changes {
        if !seen.insert(c.region.as_str()) {
            return Err(Error::Validation(format!(
                "duplicate region {:?}",
                c.region
            )));
        }
        if !c.change.is_finite() {
            return Err(Error::Validation(format!(
                "change for {:?} is not finite",
                c.region
            )));
        }
    }
    let mut ranked = changes.to_vec();
    ranked.sort_by(|a, b| {
        b.change
            .total_cmp(&a.change)
            .then_with(|| a.region.cmp(&b.region))
    });
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(y: i32, m: u32, d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, d).unwrap()
    }

    fn obs(y: i32, m: u32, d: u32, h: u32, v: f64) -> Observation {
        Observation::new(date(y, m, d).and_hms_opt(h, 0, 0).unwrap(), v).unwrap()
    }

    #[test]
    fn season_examples() {
        let label = |s, y| SeasonLabel {
            season: s,
            season_year: y,
        };
        assert_eq!(
            classify_season(date(2018, 4, 15)),
            label(Season::Summer, 2018)
        );
        assert_eq!(
            classify_season(date(2018, 1, 10)),
            label(Season::Winter, 2018)
        );
        assert_eq!(
            classify_season(date(2018, 12, 25)),
            label(Season::Winter, 2019)
        );
        assert_eq!(
            classify_season(date(2018, 8, 1)),
            label(Season::Monsoon, 2018)
        );
        assert_eq!(
            classify_season(date(2018, 11, 30)),
            label(Season::PostMonsoon, 2018)
        );
    }

    #[test]
    fn seasons_partition_the_months() {
        let mut counts: BTreeMap<Season, usize> = BTreeMap::new();
        for m in 1..=12 {
            *counts
                .entry(classify_season(date(2020, m, 1)).season)
                .or_default() += 1;
        }
        assert_eq!(counts.values().sum::<usize>(), 12);
        assert_eq!(counts[&Season::Winter], 3);
        assert_eq!(counts[&Season::Monsoon], 3);
        assert_eq!(counts[&Season::PostMonsoon], 2);
    }

    #[test]
    fn observation_bounds() {
        let ts = date(2020, 1, 1).and_hms_opt(0, 0, 0).unwrap();
        assert!(Observation::new(ts, 999.0).is_err());
        assert!(Observation::new(ts, -90.5).is_err());
        assert!(Observation::new(ts, f64::NAN).is_err());
        assert!(Observation::new(ts, 60.0).is_ok());
    }

    #[test]
    fn single_observation_year() {
        let a = aggregate_annual(&[obs(2020, 5, 1, 12, 25.0)]).unwrap();
        assert_eq!(
            a,
            vec![AnnualSummary {
                year: 2020,
                t_max: 25.0,
                t_min: 25.0,
                std_dev: 0.0,
                count: 1
            }]
        );
    }

    #[test]
    fn annual_fixture() {
        // 2019: 10, 20, 30, 40 → mean 25, SS = 500, sd = √(500/3)
        // 2020: 5, 5 → sd 0
        let o = vec![
            obs(2020, 1, 1, 0, 5.0),
            obs(2019, 1, 1, 0, 10.0),
            obs(2019, 6, 1, 0, 40.0),
            obs(2019, 3, 1, 0, 20.0),
            obs(2020, 2, 1, 0, 5.0),
            obs(2019, 9, 1, 0, 30.0),
        ];
        let a = aggregate_annual(&o).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(
            (a[0].year, a[0].t_max, a[0].t_min, a[0].count),
            (2019, 40.0, 10.0, 4)
        );
        assert!((a[0].std_dev - (500.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!((a[1].year, a[1].std_dev, a[1].count), (2020, 0.0, 2));
        assert_eq!(filter_by_coverage(&a, 3).len(), 1);
        assert!(aggregate_annual(&[]).is_err());
    }

    #[test]
    fn seasonal_groups() {
        let april: Vec<_> = (1..=5).map(|d| obs(2018, 4, d, 0, f64::from(d))).collect();
        let s = aggregate_seasonal(&april).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.values().next(), Some(&3.0));

        let winter = vec![
            obs(2018, 12, 5, 0, 10.0),
            obs(2019, 1, 5, 0, 8.0),
            obs(2019, 2, 5, 0, 12.0),
        ];
        let s = aggregate_seasonal(&winter).unwrap();
        assert_eq!(s.len(), 1);
        let (label, mean) = s.iter().next().unwrap();
        assert_eq!(label.season, Season::Winter);
        assert_eq!(label.season_year, 2019);
        assert_eq!(*mean, 10.0);
        assert!(aggregate_seasonal(&[]).is_err());
    }

    #[test]
    fn daily_means_average_hours() {
        let o = vec![
            obs(2020, 1, 2, 3, 4.0),
            obs(2020, 1, 1, 0, 1.0),
            obs(2020, 1, 1, 12, 3.0),
        ];
        let d = daily_means(&o);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].value, 2.0);
        assert_eq!(d[1].value, 4.0);
    }

    #[test]
    fn decadal_examples() {
        let flat: Vec<_> = (2001..=2020).map(|y| (y, 25.0)).collect();
        assert_eq!(decadal_change(&flat, 2020).unwrap(), 0.0);
        let gaps: Vec<_> = (2001..=2020)
            .filter(|y| *y != 2005 && *y != 2017)
            .map(|y| (y, 1.0))
            .collect();
        match decadal_change(&gaps, 2020) {
            Err(Error::Coverage { missing }) => assert_eq!(missing, vec![2005, 2017]),
            other => panic!("{other:?}"),
        }
        let dup = vec![(2001, 1.0), (2001, 2.0)];
        assert!(matches!(
            decadal_change(&dup, 2020),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn ranking() {
        let rc = |r: &str, c| RegionChange {
            region: r.into(),
            change: c,
        };
        assert_eq!(
            rank_regions(&[rc("A", 0.1), rc("B", 0.9)]).unwrap(),
            vec![rc("B", 0.9), rc("A", 0.1)]
        );
        assert_eq!(
            rank_regions(&[rc("Zeta", 0.5), rc("Alpha", 0.5)]).unwrap(),
            vec![rc("Alpha", 0.5), rc("Zeta", 0.5)]
        );
        assert!(rank_regions(&[rc("A", 0.1), rc("A", 0.2)]).is_err());
        assert!(rank_regions(&[]).is_err());
    }
}
