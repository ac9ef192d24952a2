//! Shared inputs for the criterion benchmarks.

use std::path::PathBuf;

use pythag_core::ingest::{parse_standings, split_seasons};
use pythag_core::SeasonDataset;

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mlb_1991_2011.csv")
}

/// Every season of the bundled standings fixture.
pub fn fixture_seasons() -> Vec<SeasonDataset> {
    let file = std::fs::File::open(fixture_path()).expect("bundled fixture");
    let records = parse_standings(file).expect("fixture parses");
    split_seasons(&records)
        .into_values()
        .map(|ds| ds.expect("fixture season is valid"))
        .collect()
}
