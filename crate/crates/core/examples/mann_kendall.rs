//! Mann-Kendall trend test on a short annual series with ties.
//!
//! ```bash
//! cargo run -p trendkit --example mann_kendall
//! ```

use trendkit::stats::{mann_kendall, tie_summary, Sample};

fn main() -> trendkit::Result<()> {
    let years: Vec<f64> = (2001..=2020).map(f64::from).collect();
    let temps = vec![
        24.9, 25.1, 25.0, 25.3, 25.1, 25.4, 25.4, 25.2, 25.6, 25.5, 25.7, 25.6, 25.9, 25.7, 26.0,
        26.1, 25.9, 26.2, 26.2, 26.4,
    ];
    let sample = Sample::with_times(temps, years)?;

    let ties = tie_summary(&sample);
    println!(
        "{} tie groups covering {} values",
        ties.m(),
        ties.total_multiplicity()
    );

    let r = mann_kendall(&sample, 0.05)?;
    println!("S = {}  Var(S) = {:.2}", r.s, r.var_s);
    println!("z = {:.4}  p = {:.3e}", r.z, r.p_two_sided);
    println!("tau_a = {:.4}  tau_b = {:.4}", r.tau_a, r.tau_b);
    println!(
        "trend at alpha = {}: {}",
        r.alpha,
        if r.h { "yes" } else { "no" }
    );
    Ok(())
}
