//! Nonparametric trend analysis for climate time series.
//!
//! The crate is organised around the pipeline used to study long temperature
//! records:
//!
//! - [`stats`]: Mann-Kendall trend test with tie correction, Kendall's tau,
//!   Theil-Sen slope with its rank-based confidence interval, and
//!   standardized anomalies.
//! - [`distributions`]: standard normal CDF and quantile, the Shapiro-Wilk
//!   normality test (Royston's AS R94 approximation) and Q-Q plot data.
//! - [`timeseries`]: observations, season classification, annual and
//!   seasonal aggregation, decadal change and regional ranking.
//! - [`ingestion`]: CSV parsers for region-by-year tables and station
//!   records, with a cleaning report.
//! - [`report`]: deterministic JSON/CSV/text reports and plot-ready CSV.
//! - [`cli`]: the `trendkit` command line driver.
//!
//! Every capability has a runnable program under `examples/`; start with
//! `cargo run --example mann_kendall`.
//!
//! ```
//! use trendkit::stats::{mann_kendall, theil_sen, Sample};
//!
//! let sample = Sample::from_values((1..=20).map(f64::from).collect()).unwrap();
//! let mk = mann_kendall(&sample, 0.05).unwrap();
//! assert!(mk.h);
//! assert_eq!(mk.tau_a, 1.0);
//!
//! let sen = theil_sen(&sample, 0.95).unwrap();
//! assert_eq!(sen.slope, 1.0);
//! ```

pub mod cli;
pub mod distributions;
pub mod error;
pub mod ingestion;
pub mod report;
pub mod stats;
pub mod timeseries;

pub use error::{Error, Result};
