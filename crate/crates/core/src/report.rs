//! Structured trend reports and plot-ready CSV.
//!
//! All numbers are rounded to six significant digits, and output depends
//! only on the inputs, so identical runs produce byte-identical files.
//!
//! JSON report keys: `dataset`, `n`, `s`, `var_s`, `z`, `p_two_sided`,
//! `tau_a`, `tau_b`, `h`, `alpha`, `slope`, `intercept`, `ci_lower`,
//! `ci_upper`, `confidence`, `sw_w`, `sw_p`, `metadata`. `sw_w` and `sw_p`
//! are `null` when the normality test was not run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::distributions::{NormalityResult, QqData};
use crate::error::{Error, Result};
use crate::stats::{SenEstimate, TrendTestResult};
use crate::timeseries::SeasonLabel;

pub const SIGNIFICANT_DIGITS: usize = 6;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Six-significant-digit text: plain notation for moderate magnitudes,
/// scientific otherwise.
pub fn format_sig(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 || (1e-4..1e6).contains(&r.abs()) {
        format!("{r}")
    } else {
        let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, r);
        // Drop trailing zeros of the mantissa: 1.20000e-5 → 1.2e-5.
        match s.split_once('e') {
            Some((m, e)) if m.contains('.') => {
                format!("{}e{e}", m.trim_end_matches('0').trim_end_matches('.'))
            }
            _ => s,
        }
    }
}

/// Hex SHA-256 over the concatenated inputs.
pub fn input_hash<'a>(inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for chunk in inputs {
        h.update(chunk);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetDescriptor {
    pub name: String,
    pub kind: String,
    pub inputs: Vec<String>,
    /// e.g. "daily-mean" or "annual".
    pub series: String,
    /// Unit of the Sen slope denominator, e.g. "day".
    pub time_unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub input_sha256: String,
    pub alpha: f64,
    pub confidence: f64,
    pub aggregation: String,
    pub tool: String,
    pub version: String,
}

impl RunMetadata {
    pub fn new(input_sha256: String, alpha: f64, confidence: f64, aggregation: &str) -> Self {
        Self {
            input_sha256,
            alpha,
            confidence,
            aggregation: aggregation.to_owned(),
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendReport {
    pub dataset: DatasetDescriptor,
    pub trend: TrendTestResult,
    pub sen: SenEstimate,
    pub normality: Option<NormalityResult>,
    pub metadata: RunMetadata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "txt",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            other => Err(Error::Validation(format!(
                "unknown report format {other:?} (expected json, csv or text)"
            ))),
        }
    }
}

#[derive(Serialize)]
struct FlatReport<'a> {
    dataset: &'a DatasetDescriptor,
    n: usize,
    s: i64,
    var_s: f64,
    z: f64,
    p_two_sided: f64,
    tau_a: f64,
    tau_b: f64,
    h: bool,
    alpha: f64,
    slope: f64,
    intercept: f64,
    ci_lower: f64,
    ci_upper: f64,
    confidence: f64,
    sw_w: Option<f64>,
    sw_p: Option<f64>,
    metadata: &'a RunMetadata,
}

impl<'a> FlatReport<'a> {
    fn new(r: &'a TrendReport) -> Self {
        Self {
            dataset: &r.dataset,
            n: r.trend.n,
            s: r.trend.s,
            var_s: round_sig(r.trend.var_s),
            z: round_sig(r.trend.z),
            p_two_sided: round_sig(r.trend.p_two_sided),
            tau_a: round_sig(r.trend.tau_a),
            tau_b: round_sig(r.trend.tau_b),
            h: r.trend.h,
            alpha: round_sig(r.trend.alpha),
            slope: round_sig(r.sen.slope),
            intercept: round_sig(r.sen.intercept),
            ci_lower: round_sig(r.sen.ci_lower),
            ci_upper: round_sig(r.sen.ci_upper),
            confidence: round_sig(r.sen.confidence),
            sw_w: r.normality.map(|n| round_sig(n.w)),
            sw_p: r.normality.map(|n| round_sig(n.p_value)),
            metadata: &r.metadata,
        }
    }
}

const CSV_KEYS: [&str; 16] = [
    "n",
    "s",
    "var_s",
    "z",
    "p_two_sided",
    "tau_a",
    "tau_b",
    "h",
    "alpha",
    "slope",
    "intercept",
    "ci_lower",
    "ci_upper",
    "confidence",
    "sw_w",
    "sw_p",
];

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

fn render_csv(r: &TrendReport) -> String {
    let t = &r.trend;
    let s = &r.sen;
    let values = [
        t.n.to_string(),
        t.s.to_string(),
        format_sig(t.var_s),
        format_sig(t.z),
        format_sig(t.p_two_sided),
        format_sig(t.tau_a),
        format_sig(t.tau_b),
        t.h.to_string(),
        format_sig(t.alpha),
        format_sig(s.slope),
        format_sig(s.intercept),
        format_sig(s.ci_lower),
        format_sig(s.ci_upper),
        format_sig(s.confidence),
        opt(r.normality.map(|n| n.w)),
        opt(r.normality.map(|n| n.p_value)),
    ];
    format!("{}\n{}\n", CSV_KEYS.join(","), values.join(","))
}

fn render_text(r: &TrendReport) -> String {
    let t = &r.trend;
    let s = &r.sen;
    let mut out = String::new();
    let _ = writeln!(out, "Mann-Kendall trend test: {}", r.dataset.name);
    let _ = writeln!(out, "series: {} ({} observations)", r.dataset.series, t.n);
    out.push('\n');
    let rows = [
        ("Parameter", "Significance", "Value".to_owned()),
        (
            "h",
            "null hypothesis of no trend rejected",
            if t.h { "True" } else { "False" }.to_owned(),
        ),
        ("p", "two-sided p-value", format_sig(t.p_two_sided)),
        (
            "z",
            "standardized statistic (continuity corrected)",
            format_sig(t.z),
        ),
        ("tau", "Kendall tau-b against time", format_sig(t.tau_b)),
    ];
    for (param, meaning, value) in rows {
        let _ = writeln!(out, "{param:<10} {meaning:<48} {value}");
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "S = {}, Var(S) = {}, tau-a = {}, alpha = {}",
        t.s,
        format_sig(t.var_s),
        format_sig(t.tau_a),
        format_sig(t.alpha)
    );
    let _ = writeln!(
        out,
        "Sen slope = {} per {}, intercept = {}",
        format_sig(s.slope),
        r.dataset.time_unit,
        format_sig(s.intercept)
    );
    let _ = writeln!(
        out,
        "{}% interval for slope: [{}, {}] from {} pair slopes",
        format_sig(100.0 * s.confidence),
        format_sig(s.ci_lower),
        format_sig(s.ci_upper),
        s.n_pairs
    );
    match &r.normality {
        Some(n) => {
            let _ = writeln!(
                out,
                "Shapiro-Wilk W = {}, p = {}",
                format_sig(n.w),
                format_sig(n.p_value)
            );
        }
        None => {
            let _ = writeln!(out, "Shapiro-Wilk: not run");
        }
    }
    let _ = writeln!(out, "input sha256: {}", r.metadata.input_sha256);
    out
}

/// Serializes a report deterministically.
pub fn render_trend_report(report: &TrendReport, format: ReportFormat) -> Result<Vec<u8>> {
    Ok(match format {
        ReportFormat::Json => {
            let mut v = serde_json::to_vec_pretty(&FlatReport::new(report))
                .map_err(|e| Error::Validation(format!("report serialization failed: {e}")))?;
            v.push(b'\n');
            v
        }
        ReportFormat::Csv => render_csv(report).into_bytes(),
        ReportFormat::Text => render_text(report).into_bytes(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Qq,
    Seasonal,
    AnnualChange,
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qq" => Ok(PlotKind::Qq),
            "seasonal" => Ok(PlotKind::Seasonal),
            "annual-change" => Ok(PlotKind::AnnualChange),
            other => Err(Error::Validation(format!("unknown plot kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotData {
    Qq(QqData),
    Seasonal(BTreeMap<SeasonLabel, f64>),
    /// (year, change in °C)
    AnnualChange(Vec<(i32, f64)>),
}

impl PlotData {
    pub fn kind(&self) -> PlotKind {
        match self {
            PlotData::Qq(_) => PlotKind::Qq,
            PlotData::Seasonal(_) => PlotKind::Seasonal,
            PlotData::AnnualChange(_) => PlotKind::AnnualChange,
        }
    }
}

/// CSV with a header row, rows ordered by the x coordinate.
pub fn emit_plot_data(kind: PlotKind, data: &PlotData) -> Result<Vec<u8>> {
    if data.kind() != kind {
        return Err(Error::Validation(format!(
            "plot kind {kind:?} does not match {:?} data",
            data.kind()
        )));
    }
    let mut out = String::new();
    match data {
        PlotData::Qq(qq) => {
            out.push_str("theoretical,sample\n");
            let mut points = qq.points.clone();
            points.sort_by(|a, b| a.theoretical.total_cmp(&b.theoretical));
            for p in points {
                let _ = writeln!(
                    out,
                    "{},{}",
                    format_sig(p.theoretical),
                    format_sig(p.sample)
                );
            }
        }
        PlotData::Seasonal(means) => {
            out.push_str("season_year,season,mean_c\n");
            for (label, mean) in means {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    label.season_year,
                    label.season,
                    format_sig(*mean)
                );
            }
        }
        PlotData::AnnualChange(rows) => {
            out.push_str("year,change_c\n");
            let mut rows = rows.clone();
            rows.sort_by_key(|r| r.0);
            for (year, change) in rows {
                let _ = writeln!(out, "{year},{}", format_sig(change));
            }
        }
    }
    Ok(out.into_bytes())
}
