//! Shapiro-Wilk test and Q-Q points for a skewed and a symmetric sample.

use trendkit::distributions::{normal_quantile, qq_points, shapiro_wilk};
use trendkit::stats::Sample;

fn main() -> trendkit::Result<()> {
    let n = 60;
    let scores: Vec<f64> = (1..=n)
        .map(|i| normal_quantile((i as f64 - 0.375) / (n as f64 + 0.25)))
        .collect::<trendkit::Result<_>>()?;
    let symmetric: Vec<f64> = scores.iter().map(|z| 28.0 + 4.0 * z).collect();
    let skewed: Vec<f64> = scores.iter().map(|z| (0.8 * z).exp()).collect();

    for (name, values) in [("normal scores", symmetric), ("log-normal", skewed)] {
        let sample = Sample::from_values(values)?;
        let r = shapiro_wilk(&sample)?;
        println!(
            "{name:<14} W = {:.4}  p = {:.3e}  normal at 5%: {}",
            r.w,
            r.p_value,
            r.is_normal_at(0.05)
        );
        let qq = qq_points(&sample)?;
        for p in qq.points.iter().step_by(15) {
            println!("    q = {:+.3}  x = {:.3}", p.theoretical, p.sample);
        }
    }
    Ok(())
}
