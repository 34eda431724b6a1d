//! Standardized anomalies of annual means.

use trendkit::stats::{standardized_anomalies, Sample};

fn main() -> trendkit::Result<()> {
    let annual = [
        (2014, 25.3),
        (2015, 25.8),
        (2016, 26.4),
        (2017, 25.9),
        (2018, 25.7),
        (2019, 26.1),
        (2020, 25.6),
    ];
    let sample = Sample::from_values(annual.iter().map(|(_, v)| *v).collect())?;
    let a = standardized_anomalies(&sample)?;
    println!("mean {:.3}  sd {:.3}", a.source_mean, a.source_sd);
    for ((year, v), z) in annual.iter().zip(&a.anomalies) {
        let bar = "#".repeat((z.abs() * 10.0).round() as usize);
        println!(
            "{year}  {v:5.1}  {z:+.3}  {}{bar}",
            if *z < 0.0 { "-" } else { "+" }
        );
    }
    Ok(())
}
