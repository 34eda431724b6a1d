//! The `trendkit` command line: `trend`, `regions`, `seasonal` and
//! `normality`.
//!
//! Settings come from an optional flat `key = value` file (`--config`),
//! overridden by flags. Exit status is 0 when every requested output was
//! written, 2 for input, format or coverage problems and 3 when the data
//! are statistically degenerate (e.g. a constant series).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::NaiveDateTime;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::distributions::{qq_points, shapiro_wilk, SHAPIRO_WILK_MAX_N, SHAPIRO_WILK_MIN_N};
use crate::error::{Error, Result};
use crate::ingestion::{
    merge_station_sets, parse_region_wide_csv, parse_station_csv, MergedStation, RegionTableLayout,
    RegionWideTable, StationLayout,
};
use crate::report::{
    emit_plot_data, format_sig, input_hash, render_trend_report, DatasetDescriptor, PlotData,
    PlotKind, ReportFormat, RunMetadata, TrendReport,
};
use crate::stats::{mann_kendall, theil_sen, tie_summary, Sample};
use crate::timeseries::{
    aggregate_seasonal, daily_means, decadal_change, rank_regions, Observation, RegionChange,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "trendkit",
    version,
    about = "Nonparametric trend analysis for climate series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Trend,
    Regions,
    Seasonal,
    Normality,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normality check, Mann-Kendall test and Theil-Sen slope; writes a trend report.
    Trend(FlagArgs),
    /// Decadal change per region, ranked; writes region_changes.csv.
    Regions(FlagArgs),
    /// Seasonal means per season-year; writes seasonal.csv.
    Seasonal(FlagArgs),
    /// Shapiro-Wilk test and Q-Q plot data; writes normality.json and qq.csv.
    Normality(FlagArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatasetKind {
    RegionWide,
    Station,
}

impl DatasetKind {
    fn as_str(self) -> &'static str {
        match self {
            DatasetKind::RegionWide => "region-wide",
            DatasetKind::Station => "station",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Aggregation {
    DailyMean,
    HourlyRaw,
}

impl Aggregation {
    fn as_str(self) -> &'static str {
        match self {
            Aggregation::DailyMean => "daily-mean",
            Aggregation::HourlyRaw => "hourly-raw",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
struct FlagArgs {
    /// Flat key=value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input CSV file; repeat for several files.
    #[arg(long)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<DatasetKind>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    confidence: Option<f64>,
    #[arg(long, value_enum)]
    aggregation: Option<Aggregation>,
    /// Last year of the later decade for `regions`.
    #[arg(long)]
    end_year: Option<i32>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report formats, comma separated: json, csv, text.
    #[arg(long)]
    format: Option<String>,
    /// Region to analyse when the input is a region-wide table.
    #[arg(long)]
    region: Option<String>,
    #[arg(long)]
    station_id: Option<String>,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub kind: DatasetKind,
    pub alpha: f64,
    pub confidence: f64,
    pub aggregation: Aggregation,
    pub end_year: Option<i32>,
    pub out_dir: PathBuf,
    pub formats: Vec<ReportFormat>,
    pub region: Option<String>,
    pub station_id: Option<String>,
    pub station_layout: StationLayout,
    pub region_layout: RegionTableLayout,
}

impl RunConfig {
    /// Defaults for a command before any file or flag is applied.
    pub fn defaults(command: CommandKind) -> Self {
        Self {
            inputs: Vec::new(),
            kind: match command {
                CommandKind::Regions => DatasetKind::RegionWide,
                _ => DatasetKind::Station,
            },
            alpha: 0.05,
            confidence: 0.95,
            aggregation: Aggregation::DailyMean,
            end_year: None,
            out_dir: PathBuf::from("."),
            formats: vec![ReportFormat::Json, ReportFormat::Text],
            region: None,
            station_id: None,
            station_layout: StationLayout::default(),
            region_layout: RegionTableLayout::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() || self.inputs.iter().any(|p| p.as_os_str().is_empty()) {
            return Err(Error::Validation(
                "at least one non-empty --input path is required".into(),
            ));
        }
        if !in_open_unit(self.alpha) {
            return Err(Error::Validation(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !in_open_unit(self.confidence) {
            return Err(Error::Validation(format!(
                "confidence must lie in (0, 1), got {}",
                self.confidence
            )));
        }
        if self.formats.is_empty() {
            return Err(Error::Validation("no report format selected".into()));
        }
        Ok(())
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Validation(format!("invalid {what} {value:?} for key {key}"));
        match key {
            "input" => {
                self.inputs = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(PathBuf::from)
                    .collect()
            }
            "kind" => self.kind = DatasetKind::from_str(value, true).map_err(|_| bad("kind"))?,
            "alpha" => self.alpha = value.parse().map_err(|_| bad("number"))?,
            "confidence" => self.confidence = value.parse().map_err(|_| bad("number"))?,
            "aggregation" => {
                self.aggregation =
                    Aggregation::from_str(value, true).map_err(|_| bad("aggregation"))?
            }
            "end_year" => self.end_year = Some(value.parse().map_err(|_| bad("year"))?),
            "out" => self.out_dir = PathBuf::from(value),
            "format" => self.formats = parse_formats(value)?,
            "region" => self.region = Some(value.to_owned()),
            "station_id" => self.station_id = Some(value.to_owned()),
            "temperature_column" => self.station_layout.temperature_column = value.to_owned(),
            "timestamp_column" => self.station_layout.timestamp_column = Some(value.to_owned()),
            "region_column" => self.region_layout.region_column = Some(value.to_owned()),
            other => {
                return Err(Error::Validation(format!(
                    "unknown configuration key {other:?}"
                )))
            }
        }
        Ok(())
    }

    fn resolve(command: CommandKind, flags: &FlagArgs) -> Result<Self> {
        let mut cfg = Self::defaults(command);
        if let Some(path) = &flags.config {
            let text = fs::read_to_string(path)?;
            for (key, value) in parse_config_file(&text)? {
                cfg.apply(&key, &value)?;
            }
        }
        if !flags.input.is_empty() {
            cfg.inputs = flags.input.clone();
        }
        if let Some(v) = flags.kind {
            cfg.kind = v;
        }
        if let Some(v) = flags.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = flags.confidence {
            cfg.confidence = v;
        }
        if let Some(v) = flags.aggregation {
            cfg.aggregation = v;
        }
        if let Some(v) = flags.end_year {
            cfg.end_year = Some(v);
        }
        if let Some(v) = &flags.out {
            cfg.out_dir = v.clone();
        }
        if let Some(v) = &flags.format {
            cfg.formats = parse_formats(v)?;
        }
        if let Some(v) = &flags.region {
            cfg.region = Some(v.clone());
        }
        if let Some(v) = &flags.station_id {
            cfg.station_id = Some(v.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn in_open_unit(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

fn parse_formats(list: &str) -> Result<Vec<ReportFormat>> {
    let mut formats = Vec::new();
    for f in list.split(',').filter(|s| !s.trim().is_empty()) {
        let f: ReportFormat = f.parse()?;
        if !formats.contains(&f) {
            formats.push(f);
        }
    }
    Ok(formats)
}

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::format(i as u64 + 1, None, "expected key = value"))?;
        out.insert(key.trim().replace('-', "_"), value.trim().to_owned());
    }
    Ok(out)
}

struct LoadedInputs {
    names: Vec<String>,
    contents: Vec<Vec<u8>>,
}

impl LoadedInputs {
    fn read(paths: &[PathBuf]) -> Result<Self> {
        let mut names = Vec::new();
        let mut contents = Vec::new();
        for p in paths {
            let bytes = fs::read(p).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", p.display()),
                ))
            })?;
            names.push(p.display().to_string());
            contents.push(bytes);
        }
        Ok(Self { names, contents })
    }

    fn hash(&self) -> String {
        input_hash(self.contents.iter().map(Vec::as_slice))
    }
}

fn station_id(cfg: &RunConfig) -> String {
    cfg.station_id.clone().unwrap_or_else(|| {
        cfg.inputs[0]
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "station".into())
    })
}

fn load_station(cfg: &RunConfig, inputs: &LoadedInputs) -> Result<MergedStation> {
    let id = station_id(cfg);
    let mut parts = Vec::new();
    for (name, bytes) in inputs.names.iter().zip(&inputs.contents) {
        let parsed =
            parse_station_csv(bytes.as_slice(), &cfg.station_layout, &id).map_err(|e| match e {
                Error::Format {
                    line,
                    column,
                    message,
                } => Error::Format {
                    line,
                    column,
                    message: format!("{name}: {message}"),
                },
                other => other,
            })?;
        parts.push((name.clone(), parsed));
    }
    let merged = merge_station_sets(&id, parts);
    if merged.records.records.is_empty() {
        return Err(Error::size("station input", "at least 1 valid record", 0));
    }
    Ok(merged)
}

fn load_region_table(cfg: &RunConfig, inputs: &LoadedInputs) -> Result<RegionWideTable> {
    if inputs.contents.len() != 1 {
        return Err(Error::Validation(
            "region-wide analysis takes exactly one input table".into(),
        ));
    }
    parse_region_wide_csv(inputs.contents[0].as_slice(), &cfg.region_layout)
}

fn aggregate(cfg: &RunConfig, records: &[Observation]) -> Vec<Observation> {
    match cfg.aggregation {
        Aggregation::DailyMean => daily_means(records),
        Aggregation::HourlyRaw => records.to_vec(),
    }
}

/// The series handed to the tests, with its description.
struct AnalysisSeries {
    sample: Sample,
    series: String,
    time_unit: &'static str,
    name: String,
}

fn days_since(origin: NaiveDateTime, t: NaiveDateTime) -> f64 {
    (t - origin).num_seconds() as f64 / 86_400.0
}

fn analysis_series(
    cfg: &RunConfig,
    inputs: &LoadedInputs,
) -> Result<(AnalysisSeries, Option<MergedStation>)> {
    match cfg.kind {
        DatasetKind::Station => {
            let station = load_station(cfg, inputs)?;
            let obs = aggregate(cfg, &station.records.records);
            let origin = obs[0]
                .timestamp
                .date()
                .and_hms_opt(0, 0, 0)
                .expect("midnight");
            let times = obs
                .iter()
                .map(|o| days_since(origin, o.timestamp))
                .collect();
            let values = obs.iter().map(|o| o.value).collect();
            let sample = Sample::with_times(values, times)?;
            Ok((
                AnalysisSeries {
                    sample,
                    series: cfg.aggregation.as_str().to_owned(),
                    time_unit: "day",
                    name: station.records.station_id.clone(),
                },
                Some(station),
            ))
        }
        DatasetKind::RegionWide => {
            let table = load_region_table(cfg, inputs)?;
            let region = cfg.region.as_deref().ok_or_else(|| {
                Error::Validation("--region is required for region-wide input".into())
            })?;
            let series = table.series(region).ok_or_else(|| {
                Error::Validation(format!("region {region:?} not found in table"))
            })?;
            if series.is_empty() {
                return Err(Error::size("region series", "at least 1 value", 0));
            }
            let (times, values) = series.iter().map(|(y, v)| (f64::from(*y), *v)).unzip();
            Ok((
                AnalysisSeries {
                    sample: Sample::with_times(values, times)?,
                    series: "annual".into(),
                    time_unit: "year",
                    name: region.to_owned(),
                },
                None,
            ))
        }
    }
}

fn write_output(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, bytes)?;
    Ok(path)
}

fn check_not_constant(sample: &Sample) -> Result<()> {
    let ties = tie_summary(sample);
    if ties.m() == 1 && ties.groups[0].multiplicity == sample.len() {
        Err(Error::Degenerate(
            "constant series: no trend can be tested".into(),
        ))
    } else {
        Ok(())
    }
}

/// Normality check, then Mann-Kendall and Theil-Sen; writes
/// `trend_report.<ext>` per format (and `cleaning_report.json` for station
/// input). Returns the assembled report.
pub fn cmd_trend(cfg: &RunConfig) -> Result<TrendReport> {
    let inputs = LoadedInputs::read(&cfg.inputs)?;
    let (series, station) = analysis_series(cfg, &inputs)?;
    let sample = &series.sample;
    check_not_constant(sample)?;

    let normality = if (SHAPIRO_WILK_MIN_N..=SHAPIRO_WILK_MAX_N).contains(&sample.len()) {
        let result = shapiro_wilk(sample)?;
        if result.is_normal_at(cfg.alpha) {
            eprintln!(
                "warning: Shapiro-Wilk does not reject normality (p = {}); parametric trend tests may also apply",
                format_sig(result.p_value)
            );
        }
        Some(result)
    } else {
        eprintln!(
            "note: Shapiro-Wilk skipped for n = {} (valid for {SHAPIRO_WILK_MIN_N}..={SHAPIRO_WILK_MAX_N})",
            sample.len()
        );
        None
    };

    let trend = mann_kendall(sample, cfg.alpha)?;
    let sen = theil_sen(sample, cfg.confidence)?;
    let report = TrendReport {
        dataset: DatasetDescriptor {
            name: series.name,
            kind: cfg.kind.as_str().to_owned(),
            inputs: inputs.names.clone(),
            series: series.series,
            time_unit: series.time_unit.to_owned(),
        },
        trend,
        sen,
        normality,
        metadata: RunMetadata::new(
            inputs.hash(),
            cfg.alpha,
            cfg.confidence,
            cfg.aggregation.as_str(),
        ),
    };

    if let Some(station) = &station {
        write_output(
            &cfg.out_dir,
            "cleaning_report.json",
            station.to_json().as_bytes(),
        )?;
    }
    for format in &cfg.formats {
        let bytes = render_trend_report(&report, *format)?;
        write_output(
            &cfg.out_dir,
            &format!("trend_report.{}", format.extension()),
            &bytes,
        )?;
    }
    println!(
        "{}: n = {}, S = {}, z = {}, p = {}, h = {}, tau-b = {}, Sen slope = {} per {}",
        report.dataset.name,
        trend.n,
        trend.s,
        format_sig(trend.z),
        format_sig(trend.p_two_sided),
        trend.h,
        format_sig(trend.tau_b),
        format_sig(sen.slope),
        report.dataset.time_unit
    );
    Ok(report)
}

/// Decadal change per region, ranked; writes `region_changes.csv`.
pub fn cmd_regions(cfg: &RunConfig) -> Result<Vec<RegionChange>> {
    if cfg.kind != DatasetKind::RegionWide {
        return Err(Error::Validation(
            "regions needs --kind region-wide input".into(),
        ));
    }
    let inputs = LoadedInputs::read(&cfg.inputs)?;
    let table = load_region_table(cfg, &inputs)?;
    let end_year = match cfg.end_year {
        Some(y) => y,
        None => *table.years.last().expect("parser guarantees year columns"),
    };

    let mut changes = Vec::with_capacity(table.regions.len());
    let mut gaps = Vec::new();
    for region in &table.regions {
        let series = table.series(region).expect("region from table");
        match decadal_change(&series, end_year) {
            Ok(change) => changes.push(RegionChange {
                region: region.clone(),
                change,
            }),
            Err(Error::Coverage { missing }) => gaps.push(format!("{region}: {missing:?}")),
            Err(e) => return Err(e),
        }
    }
    if !gaps.is_empty() {
        return Err(Error::Validation(format!(
            "coverage error for decades ending {end_year}; missing years per region: {}",
            gaps.join("; ")
        )));
    }

    let ranked = rank_regions(&changes)?;
    let mut csv = String::from("rank,region,change_c\n");
    for (i, rc) in ranked.iter().enumerate() {
        let name = if rc.region.contains([',', '"']) {
            format!("\"{}\"", rc.region.replace('"', "\"\""))
        } else {
            rc.region.clone()
        };
        csv.push_str(&format!("{},{},{}\n", i + 1, name, format_sig(rc.change)));
    }
    write_output(&cfg.out_dir, "region_changes.csv", csv.as_bytes())?;
    if let (Some(first), Some(last)) = (ranked.first(), ranked.last()) {
        println!(
            "{} regions, decade ending {end_year}: highest {} ({}), lowest {} ({})",
            ranked.len(),
            first.region,
            format_sig(first.change),
            last.region,
            format_sig(last.change)
        );
    }
    Ok(ranked)
}

/// Seasonal means; writes `seasonal.csv`.
pub fn cmd_seasonal(cfg: &RunConfig) -> Result<PlotData> {
    if cfg.kind != DatasetKind::Station {
        return Err(Error::Validation("seasonal needs station input".into()));
    }
    let inputs = LoadedInputs::read(&cfg.inputs)?;
    let station = load_station(cfg, &inputs)?;
    let obs = aggregate(cfg, &station.records.records);
    let data = PlotData::Seasonal(aggregate_seasonal(&obs)?);
    write_output(
        &cfg.out_dir,
        "seasonal.csv",
        &emit_plot_data(PlotKind::Seasonal, &data)?,
    )?;
    if let PlotData::Seasonal(m) = &data {
        println!("{} season groups written", m.len());
    }
    Ok(data)
}

/// Shapiro-Wilk and Q-Q data; writes `normality.json` and `qq.csv`.
pub fn cmd_normality(cfg: &RunConfig) -> Result<crate::distributions::NormalityResult> {
    let inputs = LoadedInputs::read(&cfg.inputs)?;
    let (series, _) = analysis_series(cfg, &inputs)?;
    let result = shapiro_wilk(&series.sample)?;
    let qq = PlotData::Qq(qq_points(&series.sample)?);

    let json = serde_json::json!({
        "dataset": series.name,
        "series": series.series,
        "n": result.n,
        "w": crate::report::round_sig(result.w),
        "p_value": crate::report::round_sig(result.p_value),
        "alpha": cfg.alpha,
        "normal_at_alpha": result.is_normal_at(cfg.alpha),
        "input_sha256": inputs.hash(),
    });
    let mut bytes = serde_json::to_vec_pretty(&json).expect("json value serializes");
    bytes.push(b'\n');
    write_output(&cfg.out_dir, "normality.json", &bytes)?;
    write_output(&cfg.out_dir, "qq.csv", &emit_plot_data(PlotKind::Qq, &qq)?)?;
    if result.is_normal_at(cfg.alpha) {
        eprintln!(
            "warning: normality not rejected at alpha = {}; parametric tests may also apply",
            cfg.alpha
        );
    }
    println!(
        "Shapiro-Wilk: n = {}, W = {}, p = {}",
        result.n,
        format_sig(result.w),
        format_sig(result.p_value)
    );
    Ok(result)
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_degenerate() {
        EXIT_DEGENERATE
    } else {
        EXIT_INPUT
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (kind, flags) = match &cli.command {
        Command::Trend(f) => (CommandKind::Trend, f),
        Command::Regions(f) => (CommandKind::Regions, f),
        Command::Seasonal(f) => (CommandKind::Seasonal, f),
        Command::Normality(f) => (CommandKind::Normality, f),
    };
    let outcome = RunConfig::resolve(kind, flags).and_then(|cfg| match kind {
        CommandKind::Trend => cmd_trend(&cfg).map(drop),
        CommandKind::Regions => cmd_regions(&cfg).map(drop),
        CommandKind::Seasonal => cmd_seasonal(&cfg).map(drop),
        CommandKind::Normality => cmd_normality(&cfg).map(drop),
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
