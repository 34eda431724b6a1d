//! Theil-Sen slope, intercept and rank-based confidence interval.

use trendkit::stats::{theil_sen, Sample};

fn main() -> trendkit::Result<()> {
    // Irregular sampling: the slope is per unit of `t`, here years.
    let t = vec![
        1990.0, 1992.0, 1993.0, 1997.0, 2001.0, 2002.0, 2006.0, 2011.0, 2015.0, 2019.0,
    ];
    let x = vec![25.2, 25.1, 25.5, 25.4, 25.9, 25.6, 26.0, 26.3, 26.2, 26.7];
    let sample = Sample::with_times(x, t)?;

    for confidence in [0.80, 0.90, 0.95, 0.99] {
        let sen = theil_sen(&sample, confidence)?;
        println!(
            "{:>4.0}%  slope {:.4} C/yr  [{:.4}, {:.4}]  intercept {:.2}  ({} pairs)",
            confidence * 100.0,
            sen.slope,
            sen.ci_lower,
            sen.ci_upper,
            sen.intercept,
            sen.n_pairs
        );
    }
    Ok(())
}
