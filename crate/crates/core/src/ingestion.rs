//! CSV ingestion for region-by-year tables and station records.
//!
//! Region tables are wide: one row per region, one column per year, e.g.
//!
//! ```text
//! state,period,2019,2020
//! Delhi,annual,25.1,25.4
//! ```
//!
//! Station files hold one observation per row, with the timestamp split into
//! `Year,Month,Day,Hour[,Minute]` columns or given as a single ISO-8601
//! column. Leading metadata lines before the header are skipped: the header
//! is the first line that names the temperature column.

use std::collections::{BTreeMap, HashSet};
use std::io::Read;

use chrono::{NaiveDate, NaiveDateTime};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::timeseries::{Observation, TEMPERATURE_BOUNDS};

/// Cell tokens read as missing (compared case-insensitively, after trimming).
pub const NULL_TOKENS: [&str; 5] = ["", "na", "nan", "null", "n/a"];

fn is_null_token(s: &str) -> bool {
    let t = s.trim();
    NULL_TOKENS.iter().any(|n| t.eq_ignore_ascii_case(n))
}

fn csv_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::Utf8 { err, .. } => {
            Error::format(line, None, format!("invalid UTF-8: {err}"))
        }
        other => Error::format(line, None, format!("{other:?}")),
    }
}

// ---------------------------------------------------------------------------
// Region-wide tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionTableLayout {
    /// Header of the region-name column; `None` means the first column.
    pub region_column: Option<String>,
    /// Non-year columns to ignore (case-insensitive).
    pub ignored_columns: Vec<String>,
}

impl Default for RegionTableLayout {
    fn default() -> Self {
        Self {
            region_column: None,
            ignored_columns: vec!["period".into()],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionWideTable {
    pub regions: Vec<String>,
    pub years: Vec<i32>,
    /// `cells[r][y]` is the value for `regions[r]` in `years[y]`.
    pub cells: Vec<Vec<Option<f64>>>,
}

impl RegionWideTable {
    /// Present (year, value) pairs for one region, ascending by year.
    pub fn series(&self, region: &str) -> Option<Vec<(i32, f64)>> {
        let r = self.regions.iter().position(|name| name == region)?;
        Some(
            self.years
                .iter()
                .zip(&self.cells[r])
                .filter_map(|(y, v)| v.map(|v| (*y, v)))
                .collect(),
        )
    }

    /// Writes the table back in the default layout (`region,<years…>`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("region");
        for y in &self.years {
            out.push(',');
            out.push_str(&y.to_string());
        }
        out.push('\n');
        for (name, row) in self.regions.iter().zip(&self.cells) {
            out.push_str(&quote(name));
            for v in row {
                out.push(',');
                match v {
                    Some(v) => out.push_str(&v.to_string()),
                    None => out.push_str("NA"),
                }
            }
            out.push('\n');
        }
        out
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) || field.trim() != field {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

enum RegionColumn {
    Name,
    Year(i32),
    Ignored,
}

/// Parses a region × year table. Missing tokens become `None`; anything
/// else that is not a number is a format error.
pub fn parse_region_wide_csv<R: Read>(
    input: R,
    layout: &RegionTableLayout,
) -> Result<RegionWideTable> {
    let mut rdr = reader(input);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(r) => r.map_err(csv_error)?,
        None => return Err(Error::format(1, None, "empty input, expected a header row")),
    };
    let header_line = csv_line(&header);

    let name_idx = match &layout.region_column {
        None => 0,
        Some(name) => header
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| {
                Error::format(header_line, Some(name), "region column not found in header")
            })?,
    };
    let mut columns = Vec::with_capacity(header.len());
    let mut years = Vec::new();
    for (i, h) in header.iter().enumerate() {
        if i == name_idx {
            columns.push(RegionColumn::Name);
        } else if layout
            .ignored_columns
            .iter()
            .any(|c| c.eq_ignore_ascii_case(h))
        {
            columns.push(RegionColumn::Ignored);
        } else {
            let year: i32 = h.parse().map_err(|_| {
                Error::format(
                    header_line,
                    Some(h),
                    "header column is neither a year nor an ignored column",
                )
            })?;
            if years.last().is_some_and(|last| *last >= year) {
                return Err(Error::format(
                    header_line,
                    Some(h),
                    "year columns must be strictly increasing",
                ));
            }
            years.push(year);
            columns.push(RegionColumn::Year(year));
        }
    }
    if years.is_empty() {
        return Err(Error::format(
            header_line,
            None,
            "header has no year columns",
        ));
    }

    let mut regions = Vec::new();
    let mut cells = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = csv_line(&record);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::format(
                line,
                None,
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        let mut name = String::new();
        let mut row = Vec::with_capacity(years.len());
        for (field, column) in record.iter().zip(&columns) {
            match column {
                RegionColumn::Name => name = field.to_owned(),
                RegionColumn::Ignored => {}
                RegionColumn::Year(year) => {
                    if is_null_token(field) {
                        row.push(None);
                    } else {
                        let v: f64 = field
                            .parse()
                            .ok()
                            .filter(|v: &f64| v.is_finite())
                            .ok_or_else(|| {
                                Error::format(
                                    line,
                                    Some(&year.to_string()),
                                    format!("non-numeric cell {field:?}"),
                                )
                            })?;
                        row.push(Some(v));
                    }
                }
            }
        }
        if name.is_empty() {
            return Err(Error::format(line, None, "empty region name"));
        }
        if !seen.insert(name.clone()) {
            return Err(Error::format(
                line,
                None,
                format!("duplicate region {name:?}"),
            ));
        }
        regions.push(name);
        cells.push(row);
    }
    Ok(RegionWideTable {
        regions,
        years,
        cells,
    })
}

// ---------------------------------------------------------------------------
// Station records
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationLayout {
    /// Single ISO-8601 timestamp column; takes precedence when present in
    /// the header.
    pub timestamp_column: Option<String>,
    pub year_column: String,
    pub month_column: String,
    pub day_column: String,
    /// Optional: missing hour/minute columns default to 0.
    pub hour_column: String,
    pub minute_column: String,
    pub temperature_column: String,
}

impl Default for StationLayout {
    fn default() -> Self {
        Self {
            timestamp_column: Some("timestamp".into()),
            year_column: "Year".into(),
            month_column: "Month".into(),
            day_column: "Day".into(),
            hour_column: "Hour".into(),
            minute_column: "Minute".into(),
            temperature_column: "Temperature".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationRecordSet {
    pub station_id: String,
    /// Sorted by timestamp.
    pub records: Vec<Observation>,
}

impl StationRecordSet {
    /// Writes `timestamp,Temperature` rows that parse back to the same set.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("timestamp,Temperature\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{}\n",
                r.timestamp.format("%Y-%m-%dT%H:%M:%S"),
                r.value
            ));
        }
        out
    }

    pub fn values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.value).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    Null,
    OutOfBounds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RejectedRow {
    pub line: u64,
    pub reason: RejectReason,
    pub raw: String,
}

/// Same timestamp with different values; all rows are kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimestampConflict {
    pub timestamp: NaiveDateTime,
    pub lines: Vec<u64>,
}

/// What cleaning did to a station file.
///
/// `records_out = rows_read − duplicates_removed − rows_rejected` always
/// holds; null temperatures are counted among the rejected rows.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CleaningReport {
    pub rows_read: usize,
    pub records_out: usize,
    pub duplicates_removed: usize,
    pub nulls_encountered: usize,
    pub rows_rejected: usize,
    pub duplicate_lines: Vec<u64>,
    pub rejected: Vec<RejectedRow>,
    pub conflicts: Vec<TimestampConflict>,
}

impl CleaningReport {
    pub fn is_clean(&self) -> bool {
        self.duplicates_removed == 0 && self.rows_rejected == 0 && self.conflicts.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedStation {
    pub records: StationRecordSet,
    pub report: CleaningReport,
}

enum TimeColumns {
    Iso(usize),
    Parts {
        year: usize,
        month: usize,
        day: usize,
        hour: Option<usize>,
        minute: Option<usize>,
    },
}

fn find(header: &csv::StringRecord, name: &str) -> Option<usize> {
    header.iter().position(|h| h.eq_ignore_ascii_case(name))
}

fn time_columns(header: &csv::StringRecord, layout: &StationLayout) -> Result<TimeColumns> {
    if let Some(i) = layout
        .timestamp_column
        .as_deref()
        .and_then(|c| find(header, c))
    {
        return Ok(TimeColumns::Iso(i));
    }
    let required = |name: &str| {
        find(header, name).ok_or_else(|| {
            Error::format(
                csv_line(header),
                Some(name),
                "timestamp column not found in header",
            )
        })
    };
    Ok(TimeColumns::Parts {
        year: required(&layout.year_column)?,
        month: required(&layout.month_column)?,
        day: required(&layout.day_column)?,
        hour: find(header, &layout.hour_column),
        minute: find(header, &layout.minute_column),
    })
}

const ISO_FORMATS: [&str; 4] = [
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d %H:%M",
];

fn parse_iso(s: &str) -> Option<NaiveDateTime> {
    ISO_FORMATS
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
        .or_else(|| {
            NaiveDate::parse_from_str(s, "%Y-%m-%d")
                .ok()
                .and_then(|d| d.and_hms_opt(0, 0, 0))
        })
}

fn parse_timestamp(record: &csv::StringRecord, cols: &TimeColumns) -> Option<NaiveDateTime> {
    let get = |i: usize| record.get(i);
    match *cols {
        TimeColumns::Iso(i) => parse_iso(get(i)?),
        TimeColumns::Parts {
            year,
            month,
            day,
            hour,
            minute,
        } => {
            let num = |i: usize| get(i)?.parse::<u32>().ok();
            let y: i32 = get(year)?.parse().ok()?;
            let opt = |c: Option<usize>| match c {
                Some(i) => num(i),
                None => Some(0),
            };
            NaiveDate::from_ymd_opt(y, num(month)?, num(day)?)?.and_hms_opt(
                opt(hour)?,
                opt(minute)?,
                0,
            )
        }
    }
}

/// Parses, validates and cleans a station file.
///
/// Rows with unparseable timestamps or non-numeric temperatures are format
/// errors. Null or out-of-bounds temperatures are dropped into the report.
/// Exact duplicate (timestamp, value) rows are collapsed; differing values
/// at one timestamp are kept and reported as conflicts.
pub fn parse_station_csv<R: Read>(
    input: R,
    layout: &StationLayout,
    station_id: &str,
) -> Result<ParsedStation> {
    let mut rdr = reader(input);
    let mut records = rdr.records();

    let header = loop {
        match records.next() {
            Some(r) => {
                let r = r.map_err(csv_error)?;
                if find(&r, &layout.temperature_column).is_some() {
                    break r;
                }
            }
            None => {
                return Err(Error::format(
                    0,
                    Some(&layout.temperature_column),
                    "no header row naming the temperature column",
                ))
            }
        }
    };
    let temp_idx = find(&header, &layout.temperature_column).expect("header found by this column");
    let cols = time_columns(&header, layout)?;

    let (lo, hi) = TEMPERATURE_BOUNDS;
    let mut report = CleaningReport::default();
    let mut kept: Vec<(NaiveDateTime, f64, u64)> = Vec::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = csv_line(&record);
        report.rows_read += 1;
        let timestamp = parse_timestamp(&record, &cols)
            .ok_or_else(|| Error::format(line, None, "unparseable timestamp"))?;
        let raw = record.get(temp_idx).unwrap_or("");
        if is_null_token(raw) {
            report.nulls_encountered += 1;
            report.rejected.push(RejectedRow {
                line,
                reason: RejectReason::Null,
                raw: raw.to_owned(),
            });
            continue;
        }
        let value: f64 = raw.parse().map_err(|_| {
            Error::format(
                line,
                Some(&layout.temperature_column),
                format!("non-numeric temperature {raw:?}"),
            )
        })?;
        if !(lo..=hi).contains(&value) {
            report.rejected.push(RejectedRow {
                line,
                reason: RejectReason::OutOfBounds,
                raw: raw.to_owned(),
            });
            continue;
        }
        kept.push((timestamp, value, line));
    }
    report.rows_rejected = report.rejected.len();

    // Stable: among equal keys the earliest line is retained.
    kept.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut observations: Vec<Observation> = Vec::with_capacity(kept.len());
    let mut lines_at: BTreeMap<NaiveDateTime, Vec<u64>> = BTreeMap::new();
    let mut distinct_at: BTreeMap<NaiveDateTime, usize> = BTreeMap::new();
    for (i, &(ts, value, line)) in kept.iter().enumerate() {
        let duplicate = i > 0 && kept[i - 1].0 == ts && kept[i - 1].1.to_bits() == value.to_bits();
        lines_at.entry(ts).or_default().push(line);
        if duplicate {
            report.duplicates_removed += 1;
            report.duplicate_lines.push(line);
            continue;
        }
        *distinct_at.entry(ts).or_default() += 1;
        observations.push(Observation {
            timestamp: ts,
            value,
        });
    }
    report.duplicate_lines.sort_unstable();
    report.conflicts = distinct_at
        .into_iter()
        .filter(|(_, distinct)| *distinct > 1)
        .map(|(timestamp, _)| {
            let mut lines = lines_at.remove(&timestamp).unwrap_or_default();
            lines.sort_unstable();
            TimestampConflict { timestamp, lines }
        })
        .collect();
    report.records_out = observations.len();

    Ok(ParsedStation {
        records: StationRecordSet {
            station_id: station_id.to_owned(),
            records: observations,
        },
        report,
    })
}

/// Station records gathered from several files (e.g. one export per year).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergedStation {
    pub records: StationRecordSet,
    /// Per-input cleaning reports, in input order.
    pub files: Vec<(String, CleaningReport)>,
    /// Exact (timestamp, value) repeats found across different inputs.
    pub cross_file_duplicates_removed: usize,
    /// Timestamps carrying different values in different inputs; all kept.
    pub cross_file_conflicts: Vec<NaiveDateTime>,
}

impl MergedStation {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct FileReport<'a> {
            input: &'a str,
            #[serde(flatten)]
            report: &'a CleaningReport,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            station_id: &'a str,
            records_out: usize,
            cross_file_duplicates_removed: usize,
            cross_file_conflicts: &'a [NaiveDateTime],
            files: Vec<FileReport<'a>>,
        }
        let out = Out {
            station_id: &self.records.station_id,
            records_out: self.records.records.len(),
            cross_file_duplicates_removed: self.cross_file_duplicates_removed,
            cross_file_conflicts: &self.cross_file_conflicts,
            files: self
                .files
                .iter()
                .map(|(input, report)| FileReport { input, report })
                .collect(),
        };
        serde_json::to_string_pretty(&out).expect("report serializes") + "\n"
    }
}

/// Merges separately parsed inputs, removing exact duplicates that span
/// files and flagging cross-file value conflicts.
pub fn merge_station_sets(station_id: &str, parts: Vec<(String, ParsedStation)>) -> MergedStation {
    let mut tagged: Vec<(Observation, usize)> = Vec::new();
    let mut files = Vec::with_capacity(parts.len());
    for (i, (name, parsed)) in parts.into_iter().enumerate() {
        tagged.extend(parsed.records.records.into_iter().map(|o| (o, i)));
        files.push((name, parsed.report));
    }
    tagged.sort_by(|a, b| {
        a.0.timestamp
            .cmp(&b.0.timestamp)
            .then(a.0.value.total_cmp(&b.0.value))
            .then(a.1.cmp(&b.1))
    });

    let mut records: Vec<Observation> = Vec::with_capacity(tagged.len());
    let mut sources: Vec<usize> = Vec::with_capacity(tagged.len());
    let mut duplicates = 0;
    for (o, src) in tagged {
        if let Some(last) = records.last() {
            if last.timestamp == o.timestamp && last.value.to_bits() == o.value.to_bits() {
                // Within-file duplicates were already removed by the parser.
                duplicates += 1;
                continue;
            }
        }
        records.push(o);
        sources.push(src);
    }

    let mut conflicts = Vec::new();
    let mut i = 0;
    while i < records.len() {
        let ts = records[i].timestamp;
        let mut j = i + 1;
        while j < records.len() && records[j].timestamp == ts {
            j += 1;
        }
        if sources[i..j].iter().any(|s| *s != sources[i]) {
            conflicts.push(ts);
        }
        i = j;
    }

    MergedStation {
        records: StationRecordSet {
            station_id: station_id.to_owned(),
            records,
        },
        files,
        cross_file_duplicates_removed: duplicates,
        cross_file_conflicts: conflicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region(text: &str) -> Result<RegionWideTable> {
        parse_region_wide_csv(text.as_bytes(), &RegionTableLayout::default())
    }

    fn station(text: &str) -> ParsedStation {
        parse_station_csv(text.as_bytes(), &StationLayout::default(), "test").unwrap()
    }

    #[test]
    fn region_basic() {
        let t = region("state,2019,2020\nDelhi,25.1,25.4\n").unwrap();
        assert_eq!(t.regions, vec!["Delhi"]);
        assert_eq!(t.years, vec![2019, 2020]);
        assert_eq!(t.cells, vec![vec![Some(25.1), Some(25.4)]]);
    }

    #[test]
    fn region_na_is_missing() {
        let t = region("state,period,2019,2020\n Delhi ,annual,NA,25.4\n").unwrap();
        assert_eq!(t.regions, vec!["Delhi"]);
        assert_eq!(t.cells[0], vec![None, Some(25.4)]);
        assert_eq!(t.series("Delhi").unwrap(), vec![(2020, 25.4)]);
    }

    #[test]
    fn region_errors_carry_positions() {
        match region("state,2019,2020\nA,1,2\nA,3,4\n") {
            Err(Error::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match region("state,2019,2020\nA,1,warm\n") {
            Err(Error::Format { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column.as_deref(), Some("2020"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            region("state,foo\nA,1\n"),
            Err(Error::Format { line: 1, .. })
        ));
        assert!(matches!(
            region("state,2020,2019\nA,1,2\n"),
            Err(Error::Format { line: 1, .. })
        ));
        assert!(region("").is_err());
    }

    #[test]
    fn region_named_column() {
        let layout = RegionTableLayout {
            region_column: Some("name".into()),
            ignored_columns: vec![],
        };
        let t = parse_region_wide_csv("2019,name,2020\n1,X,2\n".as_bytes(), &layout).unwrap();
        assert_eq!(t.regions, vec!["X"]);
        assert_eq!(t.cells[0], vec![Some(1.0), Some(2.0)]);
    }

    #[test]
    fn station_duplicates_collapse() {
        let p = station("Year,Month,Day,Hour,Temperature\n2020,1,1,0,10.5\n2020,1,1,0,10.5\n");
        assert_eq!(p.records.records.len(), 1);
        assert_eq!(p.report.duplicates_removed, 1);
        assert_eq!(p.report.duplicate_lines, vec![3]);
    }

    #[test]
    fn station_out_of_bounds_rejected() {
        let p = station("Year,Month,Day,Hour,Temperature\n2020,1,1,0,999\n2020,1,1,1,12\n");
        assert_eq!(p.records.records.len(), 1);
        assert_eq!(p.report.rows_rejected, 1);
        assert_eq!(p.report.rejected[0].reason, RejectReason::OutOfBounds);
        assert_eq!(p.report.rejected[0].line, 2);
    }

    #[test]
    fn station_sorted_output() {
        let p =
            station("Year,Month,Day,Hour,Temperature\n2020,1,2,0,3\n2020,1,1,5,2\n2020,1,1,0,1\n");
        let v: Vec<f64> = p.records.values();
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn station_bad_timestamp_is_fatal() {
        let err = parse_station_csv(
            "Year,Month,Day,Hour,Temperature\n2020,1,1,0,1\n2020,13,1,0,1\n".as_bytes(),
            &StationLayout::default(),
            "x",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }));
    }

    #[test]
    fn station_skips_metadata_lines() {
        let text = "Source,Location ID,Latitude\nNSRDB,12345,28.6\nYear,Month,Day,Hour,Minute,Temperature\n2016,1,1,0,30,9.2\n";
        let p = station(text);
        assert_eq!(p.records.records.len(), 1);
        assert_eq!(
            p.records.records[0].timestamp,
            NaiveDate::from_ymd_opt(2016, 1, 1)
                .unwrap()
                .and_hms_opt(0, 30, 0)
                .unwrap()
        );
    }

    #[test]
    fn station_iso_timestamps() {
        let p = station("timestamp,Temperature\n2020-03-01T06:00:00,14\n2020-03-01,12\n");
        assert_eq!(p.records.values(), vec![12.0, 14.0]);
    }

    #[test]
    fn conflicts_are_kept_and_flagged() {
        let p = station("Year,Month,Day,Hour,Temperature\n2020,1,1,0,10\n2020,1,1,0,11\n");
        assert_eq!(p.records.records.len(), 2);
        assert_eq!(p.report.conflicts.len(), 1);
        assert_eq!(p.report.conflicts[0].lines, vec![2, 3]);
        assert!(!p.report.is_clean());
    }

    #[test]
    fn clean_file_has_zero_counts() {
        let p = station("Year,Month,Day,Hour,Temperature\n2020,1,1,0,10\n2020,1,1,1,11\n");
        assert!(p.report.is_clean());
        assert_eq!(
            p.report.duplicates_removed + p.report.nulls_encountered + p.report.rows_rejected,
            0
        );
    }

    #[test]
    fn three_duplicates() {
        let p = station(
            "Year,Month,Day,Hour,Temperature\n2020,1,1,0,10\n2020,1,1,0,10\n2020,1,1,1,11\n2020,1,1,1,11\n2020,1,1,0,10\n",
        );
        assert_eq!(p.report.duplicates_removed, 3);
        assert_eq!(p.report.duplicate_lines, vec![3, 5, 6]);
    }

    #[test]
    fn merge_across_files() {
        let a = station("Year,Month,Day,Hour,Temperature\n2020,1,1,0,10\n2020,1,1,1,11\n");
        let b = station(
            "Year,Month,Day,Hour,Temperature\n2020,1,1,1,11\n2020,1,1,2,12\n2020,1,1,0,9\n",
        );
        let m = merge_station_sets("s", vec![("a".into(), a), ("b".into(), b)]);
        assert_eq!(m.cross_file_duplicates_removed, 1);
        assert_eq!(m.records.values(), vec![9.0, 10.0, 11.0, 12.0]);
        assert_eq!(m.cross_file_conflicts.len(), 1);
        let json: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(json["files"][1]["input"], "b");
        assert_eq!(json["records_out"], 4);
    }

    #[test]
    fn mixed_defects_fixture() {
        // 9 data rows: 2 duplicates, 2 nulls, 1 out-of-bounds, 1 conflict pair.
        let text = "Year,Month,Day,Hour,Temperature\n\
                    2019,6,1,0,30\n\
                    2019,6,1,1,31\n\
                    2019,6,1,0,30\n\
                    2019,6,1,2,NA\n\
                    2019,6,1,3,\n\
                    2019,6,1,4,-9999\n\
                    2019,6,1,1,31\n\
                    2019,6,1,5,33\n\
                    2019,6,1,5,34\n";
        let r = station(text).report;
        assert_eq!(r.rows_read, 9);
        assert_eq!(r.duplicates_removed, 2);
        assert_eq!(r.nulls_encountered, 2);
        assert_eq!(r.rows_rejected, 3);
        assert_eq!(r.conflicts.len(), 1);
        assert_eq!(r.records_out, 4);
        assert_eq!(
            r.records_out,
            r.rows_read - r.duplicates_removed - r.rows_rejected
        );
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["duplicates_removed"], 2);
    }
}
