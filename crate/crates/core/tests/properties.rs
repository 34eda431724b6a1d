mod common;

use chrono::{Duration, NaiveDate};
use proptest::prelude::*;
use trendkit::distributions::{qq_points, shapiro_wilk};
use trendkit::ingestion::{
    parse_region_wide_csv, parse_station_csv, RegionTableLayout, StationLayout,
};
use trendkit::stats::{
    kendall_tau, mann_kendall, mk_s_statistic, theil_sen, theil_sen_slope, tie_summary, Sample,
};
use trendkit::timeseries::{
    aggregate_annual, classify_season, decadal_change, rank_regions, Observation, RegionChange,
    Season,
};

fn quarter_values(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        (-200i32..200).prop_map(|v| f64::from(v) * 0.25),
        min_len..max_len,
    )
}

fn not_constant(x: &[f64]) -> bool {
    x.iter().any(|v| *v != x[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn s_matches_pair_enumeration(x in quarter_values(4, 40)) {
        let s = Sample::from_values(x.clone()).unwrap();
        prop_assert_eq!(mk_s_statistic(&s).unwrap(), common::naive_s(&x));
    }

    #[test]
    fn sen_slope_matches_enumeration(x in quarter_values(4, 25)) {
        let t: Vec<f64> = (1..=x.len()).map(|i| i as f64).collect();
        let s = Sample::with_times(x.clone(), t.clone()).unwrap();
        prop_assert_eq!(theil_sen_slope(&s).unwrap(), common::naive_sen_slope(&t, &x));
    }

    #[test]
    fn negation_is_antisymmetric(x in quarter_values(4, 50)) {
        prop_assume!(not_constant(&x));
        let a = Sample::from_values(x.clone()).unwrap();
        let b = Sample::from_values(x.iter().map(|v| -v).collect()).unwrap();
        let (ra, rb) = (mann_kendall(&a, 0.05).unwrap(), mann_kendall(&b, 0.05).unwrap());
        prop_assert_eq!(ra.s, -rb.s);
        prop_assert_eq!(ra.p_two_sided, rb.p_two_sided);
        prop_assert_eq!(theil_sen_slope(&a).unwrap(), -theil_sen_slope(&b).unwrap());
    }

    #[test]
    fn shift_leaves_statistics_unchanged(x in quarter_values(4, 50), c in -400i32..400) {
        prop_assume!(not_constant(&x));
        let c = f64::from(c) * 0.25;
        let a = Sample::from_values(x.clone()).unwrap();
        let b = Sample::from_values(x.iter().map(|v| v + c).collect()).unwrap();
        let (ra, rb) = (mann_kendall(&a, 0.05).unwrap(), mann_kendall(&b, 0.05).unwrap());
        prop_assert_eq!(ra, rb);
        let (sa, sb) = (theil_sen(&a, 0.95).unwrap(), theil_sen(&b, 0.95).unwrap());
        prop_assert_eq!(sa.slope, sb.slope);
        prop_assert!(common::rel_close(sb.intercept, sa.intercept + c, 1e-9) || (sb.intercept - sa.intercept - c).abs() < 1e-9);
    }

    #[test]
    fn time_scale_divides_slope(x in quarter_values(4, 40), a in 0.01f64..100.0) {
        prop_assume!(not_constant(&x));
        let t: Vec<f64> = (1..=x.len()).map(|i| i as f64).collect();
        let base = Sample::with_times(x.clone(), t.clone()).unwrap();
        let scaled = Sample::with_times(x, t.iter().map(|v| v * a).collect()).unwrap();
        let (r0, r1) = (mann_kendall(&base, 0.05).unwrap(), mann_kendall(&scaled, 0.05).unwrap());
        prop_assert_eq!(r0, r1);
        let (s0, s1) = (theil_sen_slope(&base).unwrap(), theil_sen_slope(&scaled).unwrap());
        prop_assert!(common::rel_close(s1, s0 / a, 1e-9));
    }

    #[test]
    fn monotone_series_hit_the_extremes(n in 4usize..200, step in 0.01f64..10.0) {
        let up = Sample::from_values((0..n).map(|i| i as f64 * step).collect()).unwrap();
        let down = Sample::from_values((0..n).map(|i| -(i as f64) * step).collect()).unwrap();
        let pairs = (n * (n - 1) / 2) as i64;
        let (ru, rd) = (mann_kendall(&up, 0.05).unwrap(), mann_kendall(&down, 0.05).unwrap());
        prop_assert_eq!(ru.s, pairs);
        prop_assert_eq!(rd.s, -pairs);
        prop_assert_eq!(ru.tau_a, 1.0);
        prop_assert_eq!(rd.tau_a, -1.0);
    }

    #[test]
    fn taus_and_interval_are_bounded(x in quarter_values(4, 60), conf in 0.5f64..0.999) {
        prop_assume!(not_constant(&x));
        let s = Sample::from_values(x).unwrap();
        let tau = kendall_tau(&s).unwrap();
        prop_assert!(tau.tau_a.abs() <= 1.0 && tau.tau_b.abs() <= 1.0);
        let sen = theil_sen(&s, conf).unwrap();
        prop_assert!(sen.ci_lower <= sen.slope && sen.slope <= sen.ci_upper);
    }

    #[test]
    fn tie_summary_ignores_order(x in quarter_values(1, 60), seed in any::<u64>()) {
        let mut shuffled = x.clone();
        let mut rng = common::SplitMix64::new(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
        }
        let a = tie_summary(&Sample::from_values(x).unwrap());
        let b = tie_summary(&Sample::from_values(shuffled).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn shapiro_w_is_affine_invariant(seed in any::<u64>(), n in 3usize..300, a in 0.01f64..100.0, b in -1e3f64..1e3) {
        let x = common::reference_sample("normal01", n, seed);
        let w0 = shapiro_wilk(&Sample::from_values(x.clone()).unwrap()).unwrap().w;
        let w1 = shapiro_wilk(&Sample::from_values(x.iter().map(|v| a * v + b).collect()).unwrap()).unwrap().w;
        prop_assert!((w0 - w1).abs() <= 1e-9);
    }

    #[test]
    fn qq_quantiles_are_antisymmetric(x in quarter_values(1, 80)) {
        let pts = qq_points(&Sample::from_values(x).unwrap()).unwrap().points;
        let n = pts.len();
        for i in 0..n {
            prop_assert!((pts[i].theoretical + pts[n - 1 - i].theoretical).abs() <= 1e-12);
        }
    }

    #[test]
    fn season_is_total(ord in 0i64..40_000) {
        let date = NaiveDate::from_ymd_opt(1950, 1, 1).unwrap() + Duration::days(ord);
        let label = classify_season(date);
        use chrono::Datelike;
        let expected = match date.month() {
            12 | 1 | 2 => Season::Winter,
            3..=6 => Season::Summer,
            7..=9 => Season::Monsoon,
            _ => Season::PostMonsoon,
        };
        prop_assert_eq!(label.season, expected);
        let expected_year = if date.month() == 12 { date.year() + 1 } else { date.year() };
        prop_assert_eq!(label.season_year, expected_year);
    }

    #[test]
    fn annual_counts_and_maxima(hours in prop::collection::vec((0i64..(24 * 365 * 4), -40i32..50), 1..300)) {
        let origin = NaiveDate::from_ymd_opt(2016, 1, 1).unwrap().and_hms_opt(0, 0, 0).unwrap();
        let obs: Vec<Observation> = hours
            .iter()
            .map(|(h, v)| Observation::new(origin + Duration::hours(*h), f64::from(*v) * 0.5).unwrap())
            .collect();
        let annual = aggregate_annual(&obs).unwrap();
        prop_assert_eq!(annual.iter().map(|a| a.count).sum::<usize>(), obs.len());
        let global = obs.iter().map(|o| o.value).fold(f64::NEG_INFINITY, f64::max);
        let best = annual.iter().map(|a| a.t_max).fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(best, global);
    }

    #[test]
    fn decadal_change_swap_and_shift(vals in prop::collection::vec(-400i32..400, 20), c in -100i32..100) {
        let series: Vec<(i32, f64)> = vals.iter().enumerate().map(|(i, v)| (2001 + i as i32, f64::from(*v) * 0.125)).collect();
        let swapped: Vec<(i32, f64)> = series
            .iter()
            .map(|(y, v)| (if *y <= 2010 { y + 10 } else { y - 10 }, *v))
            .collect();
        let shifted: Vec<(i32, f64)> = series.iter().map(|(y, v)| (*y, v + f64::from(c))).collect();
        let d = decadal_change(&series, 2020).unwrap();
        prop_assert_eq!(decadal_change(&swapped, 2020).unwrap(), -d);
        prop_assert!((decadal_change(&shifted, 2020).unwrap() - d).abs() <= 1e-9);
    }

    #[test]
    fn ranking_is_a_permutation(changes in prop::collection::btree_map("[a-e]{1,3}", -8i32..8, 1..30)) {
        let input: Vec<RegionChange> = changes
            .iter()
            .map(|(r, c)| RegionChange { region: r.clone(), change: f64::from(*c) * 0.1 })
            .collect();
        let ranked = rank_regions(&input).unwrap();
        let key = |v: &[RegionChange]| {
            let mut k: Vec<(String, u64)> = v.iter().map(|r| (r.region.clone(), r.change.to_bits())).collect();
            k.sort();
            k
        };
        prop_assert_eq!(key(&ranked), key(&input));
        for w in ranked.windows(2) {
            prop_assert!(w[0].change > w[1].change || (w[0].change == w[1].change && w[0].region <= w[1].region));
        }
    }

    #[test]
    fn station_parse_is_idempotent(rows in prop::collection::vec((0i64..5000, -800i32..800), 1..80)) {
        let origin = NaiveDate::from_ymd_opt(2019, 1, 1).unwrap().and_hms_opt(0, 0, 0).unwrap();
        let mut csv = String::from("Year,Month,Day,Hour,Minute,Temperature\n");
        for (h, v) in &rows {
            let t = origin + Duration::hours(*h);
            use chrono::{Datelike, Timelike};
            csv.push_str(&format!("{},{},{},{},0,{}\n", t.year(), t.month(), t.day(), t.hour(), f64::from(*v) * 0.05));
        }
        let layout = StationLayout { timestamp_column: None, ..StationLayout::default() };
        let first = parse_station_csv(csv.as_bytes(), &layout, "s").unwrap();
        let r = &first.report;
        prop_assert_eq!(r.records_out, r.rows_read - r.duplicates_removed - r.rows_rejected);
        let again = parse_station_csv(first.records.to_csv().as_bytes(), &StationLayout::default(), "s").unwrap();
        prop_assert_eq!(again.records, first.records);
        prop_assert_eq!(again.report.duplicates_removed, 0);
    }

    #[test]
    fn region_parse_is_idempotent(cells in prop::collection::vec(prop::collection::vec(prop::option::of(-300i32..300), 5), 1..8)) {
        let mut csv = String::from("state,period,2001,2002,2003,2004,2005\n");
        for (i, row) in cells.iter().enumerate() {
            csv.push_str(&format!("Region {i},annual"));
            for c in row {
                match c {
                    Some(v) => csv.push_str(&format!(",{}", f64::from(*v) * 0.01)),
                    None => csv.push_str(",NA"),
                }
            }
            csv.push('\n');
        }
        let layout = RegionTableLayout::default();
        let first = parse_region_wide_csv(csv.as_bytes(), &layout).unwrap();
        let again = parse_region_wide_csv(first.to_csv().as_bytes(), &layout).unwrap();
        prop_assert_eq!(again, first);
    }
}
