//! Seasonal means with winter spanning the year boundary.

use chrono::{Duration, NaiveDate};
use trendkit::timeseries::{aggregate_seasonal, classify_season, Observation};

fn main() -> trendkit::Result<()> {
    let start = NaiveDate::from_ymd_opt(2018, 11, 1).unwrap();
    let mut obs = Vec::new();
    for day in 0..(2 * 365) {
        let date = start + Duration::days(day);
        let phase = 2.0 * std::f64::consts::PI * (day as f64 - 170.0) / 365.25;
        let temp = 25.0 + 9.0 * phase.cos() + 0.002 * day as f64;
        obs.push(Observation::new(date.and_hms_opt(12, 0, 0).unwrap(), temp)?);
    }

    let dec = classify_season(NaiveDate::from_ymd_opt(2018, 12, 31).unwrap());
    println!("2018-12-31 belongs to {} {}", dec.season, dec.season_year);

    for (label, mean) in aggregate_seasonal(&obs)? {
        println!(
            "{} {:<13} {:.2} C",
            label.season_year,
            label.season.as_str(),
            mean
        );
    }
    Ok(())
}
