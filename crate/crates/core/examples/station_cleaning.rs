//! Parsing a station export with metadata lines, nulls, duplicates,
//! sentinel values and a conflicting reading.

use trendkit::ingestion::{parse_station_csv, StationLayout};

const EXPORT: &str = "\
Source,Example Station
Latitude,28.6,Longitude,77.2
Year,Month,Day,Hour,Minute,Temperature
2019,5,1,0,0,31.5
2019,5,1,1,0,30.9
2019,5,1,1,0,30.9
2019,5,1,2,0,NA
2019,5,1,3,0,-999
2019,5,1,4,0,29.8
2019,5,1,4,0,30.2
2019,5,1,5,0,29.5
";

fn main() -> trendkit::Result<()> {
    let layout = StationLayout {
        timestamp_column: None,
        ..StationLayout::default()
    };
    let parsed = parse_station_csv(EXPORT.as_bytes(), &layout, "example")?;
    for r in &parsed.records.records {
        println!("{}  {:5.1}", r.timestamp, r.value);
    }
    println!("{}", parsed.report.to_json());
    Ok(())
}
