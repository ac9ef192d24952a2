#![allow(dead_code)]

use std::fs::File;
use std::path::PathBuf;

use pythag_core::ingest::{parse_standings, split_seasons};
use pythag_core::{SeasonDataset, TeamSeason};

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mlb_1991_2011.csv")
}

pub fn fixture_records() -> Vec<TeamSeason> {
    parse_standings(File::open(fixture_path()).unwrap()).unwrap()
}

pub fn fixture_seasons() -> Vec<SeasonDataset> {
    split_seasons(&fixture_records())
        .into_values()
        .map(Result::unwrap)
        .collect()
}

/// Published per-season estimates:
/// (season, α̂, β̂, R_ave, γ̂, 95% lower, 95% upper, R²).
pub type Row = (i32, f64, f64, f64, f64, f64, f64, f64);

pub const PUBLISHED: [Row; 21] = [
    (1991, 0.500, 0.119, 4.308, 2.058, 1.807, 2.310, 0.922),
    (1992, 0.500, 0.126, 4.117, 2.076, 1.710, 2.442, 0.851),
    (1993, 0.500, 0.109, 4.598, 2.001, 1.645, 2.359, 0.851),
    (1994, 0.500, 0.084, 4.923, 1.658, 1.366, 1.951, 0.836),
    (1995, 0.500, 0.094, 4.847, 1.826, 1.466, 2.185, 0.807),
    (1996, 0.500, 0.091, 5.036, 1.825, 1.564, 2.085, 0.889),
    (1997, 0.500, 0.087, 4.767, 1.668, 1.345, 1.991, 0.813),
    (1998, 0.500, 0.098, 4.790, 1.881, 1.667, 2.095, 0.920),
    (1999, 0.500, 0.099, 5.085, 2.010, 1.794, 2.226, 0.929),
    (2000, 0.500, 0.092, 5.140, 1.893, 1.626, 2.160, 0.883),
    (2001, 0.500, 0.104, 4.775, 1.978, 1.743, 2.215, 0.913),
    (2002, 0.500, 0.103, 4.618, 1.908, 1.682, 2.134, 0.914),
    (2003, 0.500, 0.103, 4.728, 1.949, 1.716, 2.181, 0.913),
    (2004, 0.500, 0.109, 4.814, 2.108, 1.843, 2.374, 0.905),
    (2005, 0.500, 0.095, 4.586, 1.737, 1.436, 2.040, 0.833),
    (2006, 0.500, 0.098, 4.858, 1.901, 1.567, 2.235, 0.829),
    (2007, 0.500, 0.085, 4.797, 1.640, 1.330, 1.951, 0.807),
    (2008, 0.500, 0.104, 4.651, 1.931, 1.619, 2.244, 0.851),
    (2009, 0.500, 0.106, 4.613, 1.963, 1.642, 2.284, 0.848),
    (2010, 0.500, 0.094, 4.366, 1.634, 1.489, 1.780, 0.950),
    (2011, 0.500, 0.104, 4.283, 1.775, 1.506, 2.045, 0.867),
];
