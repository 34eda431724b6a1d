//! Yearly extremes and spread from hourly data, with a coverage filter.

use chrono::{Duration, NaiveDate};
use trendkit::timeseries::Observation;
use trendkit::timeseries::{aggregate_annual, filter_by_coverage, DEFAULT_MIN_HOURLY_PER_YEAR};

fn main() -> trendkit::Result<()> {
    let start = NaiveDate::from_ymd_opt(2016, 1, 1)
        .unwrap()
        .and_hms_opt(0, 0, 0)
        .unwrap();
    let mut obs = Vec::new();
    // Three full years, then a year with only two months of data.
    for h in 0..(24 * (3 * 365 + 60)) {
        let t = start + Duration::hours(h);
        let season = (2.0 * std::f64::consts::PI * (h as f64 / 24.0 - 170.0) / 365.25).cos();
        let diurnal = (2.0 * std::f64::consts::PI * (h % 24) as f64 / 24.0 - 2.5).cos();
        obs.push(Observation::new(t, 25.0 + 10.0 * season + 5.0 * diurnal)?);
    }

    let all = aggregate_annual(&obs)?;
    for s in &all {
        println!(
            "{}  Tmax {:6.2}  Tmin {:6.2}  sd {:5.2}  n = {}",
            s.year, s.t_max, s.t_min, s.std_dev, s.count
        );
    }
    let kept = filter_by_coverage(&all, DEFAULT_MIN_HOURLY_PER_YEAR);
    println!(
        "{} of {} years meet {} hourly observations",
        kept.len(),
        all.len(),
        DEFAULT_MIN_HOURLY_PER_YEAR
    );
    Ok(())
}
