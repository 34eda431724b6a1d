//! Decadal change per region from a wide table, ranked.

use trendkit::ingestion::{parse_region_wide_csv, RegionTableLayout};
use trendkit::timeseries::{decadal_change, rank_regions, RegionChange};

fn main() -> trendkit::Result<()> {
    let mut csv = String::from("state,period");
    for y in 2001..=2020 {
        csv.push_str(&format!(",{y}"));
    }
    csv.push('\n');
    for (name, base, slope) in [
        ("Coastal", 27.1, 0.03),
        ("Highland", 14.2, 0.06),
        ("Plains", 25.4, 0.02),
        ("Delta", 26.0, 0.045),
    ] {
        csv.push_str(&format!("{name},annual"));
        for (i, _) in (2001..=2020).enumerate() {
            let wobble = if i % 3 == 0 { 0.1 } else { -0.05 };
            csv.push_str(&format!(",{:.2}", base + slope * i as f64 + wobble));
        }
        csv.push('\n');
    }

    let table = parse_region_wide_csv(csv.as_bytes(), &RegionTableLayout::default())?;
    let changes = table
        .regions
        .iter()
        .map(|r| {
            let change = decadal_change(&table.series(r).unwrap(), 2020)?;
            Ok(RegionChange {
                region: r.clone(),
                change,
            })
        })
        .collect::<trendkit::Result<Vec<_>>>()?;

    for (rank, rc) in rank_regions(&changes)?.iter().enumerate() {
        println!("{:>2}. {:<10} {:+.3} C", rank + 1, rc.region, rc.change);
    }
    Ok(())
}
