//! Standings files: one row per team-season.
//!
//! ```text
//! season,team,league,games,wins,losses,runs_scored,runs_allowed
//! 2010,SEA,AL,162,61,101,513,698
//! ```

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::RegressionPoint;
use crate::units::{LeagueAverage, Unit};

pub const HEADER: [&str; 8] = [
    "season",
    "team",
    "league",
    "games",
    "wins",
    "losses",
    "runs_scored",
    "runs_allowed",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeamSeason {
    pub season: i32,
    pub team: String,
    pub league: String,
    pub games: u32,
    pub wins: u32,
    pub losses: u32,
    /// Season total.
    pub runs_scored: u32,
    /// Season total.
    pub runs_allowed: u32,
}

impl TeamSeason {
    pub fn validate(&self) -> Result<()> {
        let fail = |message: &str| Error::Validation {
            season: self.season,
            team: self.team.clone(),
            message: message.to_string(),
        };
        if self.games == 0 {
            return Err(fail("games must be positive"));
        }
        let decisions = u64::from(self.wins) + u64::from(self.losses);
        if decisions == 0 {
            return Err(fail("no decisions (wins + losses = 0)"));
        }
        if decisions > u64::from(self.games) {
            return Err(fail(&format!(
                "wins + losses = {decisions} exceeds games = {}",
                self.games
            )));
        }
        Ok(())
    }

    /// Wins over decisions; ties and no-decisions are ignored.
    pub fn win_pct(&self) -> f64 {
        f64::from(self.wins) / (f64::from(self.wins) + f64::from(self.losses))
    }
}

/// Reads a standings file. The header must contain every column of
/// [`HEADER`]; rows are validated and returned in file order.
pub fn parse_standings<R: Read>(source: R) -> Result<Vec<TeamSeason>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers().map_err(csv_error)?.clone();
    let missing: Vec<&str> = HEADER
        .iter()
        .copied()
        .filter(|col| !headers.iter().any(|h| h == *col))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Schema(format!(
            "missing column(s): {}",
            missing.join(", ")
        )));
    }

    let mut out = Vec::new();
    for row in reader.deserialize::<TeamSeason>() {
        let rec = row.map_err(csv_error)?;
        rec.validate()?;
        out.push(rec);
    }
    Ok(out)
}

fn csv_error(err: csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    match err.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::Deserialize { err, .. } => Error::Parse {
            line,
            message: err.to_string(),
        },
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => Error::Parse {
            line,
            message: format!("expected {expected_len} fields, found {len}"),
        },
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

/// Writes records with the canonical header.
pub fn write_standings<W: Write>(records: &[TeamSeason], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    for r in records {
        w.serialize(r).map_err(csv_error)?;
    }
    if records.is_empty() {
        w.write_record(HEADER).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// All teams of one season plus the league scoring level.
#[derive(Debug, Clone, PartialEq)]
pub struct SeasonDataset {
    pub season: i32,
    pub records: Vec<TeamSeason>,
    /// `Σ runs_scored / Σ games`, runs per game.
    pub r_ave: LeagueAverage,
    pub n_teams: usize,
}

/// Collects the records of `season` and computes the league average.
pub fn build_season_dataset(records: &[TeamSeason], season: i32) -> Result<SeasonDataset> {
    let recs: Vec<TeamSeason> = records
        .iter()
        .filter(|r| r.season == season)
        .cloned()
        .collect();
    if recs.is_empty() {
        return Err(Error::NotFound(season));
    }
    if recs.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            have: recs.len(),
        });
    }
    let runs: u64 = recs.iter().map(|r| u64::from(r.runs_scored)).sum();
    let games: u64 = recs.iter().map(|r| u64::from(r.games)).sum();
    let r_ave = LeagueAverage::new(runs as f64 / games as f64, Unit::PerGame)?;
    Ok(SeasonDataset {
        season,
        n_teams: recs.len(),
        records: recs,
        r_ave,
    })
}

/// Distinct seasons present, ascending.
pub fn seasons(records: &[TeamSeason]) -> Vec<i32> {
    let mut s: Vec<i32> = records.iter().map(|r| r.season).collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// Splits a multi-season file; one entry per season, each built or failed
/// independently.
pub fn split_seasons(records: &[TeamSeason]) -> BTreeMap<i32, Result<SeasonDataset>> {
    seasons(records)
        .into_iter()
        .map(|s| (s, build_season_dataset(records, s)))
        .collect()
}

/// `x = (rs − ra) / games` (runs per game), `y = wins / (wins + losses)`.
pub fn to_regression_points(ds: &SeasonDataset) -> Result<Vec<RegressionPoint>> {
    ds.records
        .iter()
        .map(|r| {
            r.validate()?;
            let diff = f64::from(r.runs_scored) - f64::from(r.runs_allowed);
            Ok(RegressionPoint {
                x: diff / f64::from(r.games),
                y: r.win_pct(),
                weight: r.games,
                unit: Unit::PerGame,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEAD: &str = "season,team,league,games,wins,losses,runs_scored,runs_allowed\n";

    fn team(team: &str, runs: u32, allowed: u32) -> TeamSeason {
        TeamSeason {
            season: 2000,
            team: team.into(),
            league: "XL".into(),
            games: 162,
            wins: 81,
            losses: 81,
            runs_scored: runs,
            runs_allowed: allowed,
        }
    }

    #[test]
    fn parses_row() {
        let text = format!("{HEAD}2010,SEA,AL,162,61,101,513,698\n");
        let recs = parse_standings(text.as_bytes()).unwrap();
        assert_eq!(
            recs,
            vec![TeamSeason {
                season: 2010,
                team: "SEA".into(),
                league: "AL".into(),
                games: 162,
                wins: 61,
                losses: 101,
                runs_scored: 513,
                runs_allowed: 698,
            }]
        );
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_standings(HEAD.as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn validation_error_names_record() {
        let text = format!("{HEAD}2010,SEA,AL,162,61,102,513,698\n");
        match parse_standings(text.as_bytes()) {
            Err(Error::Validation { season, team, .. }) => {
                assert_eq!((season, team.as_str()), (2010, "SEA"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_row_reports_line() {
        let text = format!("{HEAD}2010,SEA,AL,162,61,101,513,698\n2010,OAK,AL,162,eighty,81,663,626\n");
        match parse_standings(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let text = format!("{HEAD}2010,SEA,AL,162,61\n");
        assert!(matches!(
            parse_standings(text.as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn missing_column_is_schema_error() {
        let text = "season,team,league,games,wins,losses,runs_scored\n2010,SEA,AL,162,61,101,513\n";
        assert!(matches!(parse_standings(text.as_bytes()), Err(Error::Schema(_))));
    }

    #[test]
    fn league_average() {
        let recs = vec![team("A", 810, 700), team("B", 810, 800), team("C", 648, 768)];
        let ds = build_season_dataset(&recs, 2000).unwrap();
        assert!((ds.r_ave.value() - 2268.0 / 486.0).abs() < 1e-12);
        assert!((ds.r_ave.value() - 4.6667).abs() < 1e-4);
        assert_eq!(ds.n_teams, 3);

        let mut shuffled = recs.clone();
        shuffled.reverse();
        let ds2 = build_season_dataset(&shuffled, 2000).unwrap();
        assert_eq!(ds.r_ave, ds2.r_ave);
    }

    #[test]
    fn dataset_errors() {
        let recs = vec![team("A", 810, 700), team("B", 810, 800)];
        assert!(matches!(build_season_dataset(&recs, 1999), Err(Error::NotFound(1999))));
        assert!(matches!(
            build_season_dataset(&recs, 2000),
            Err(Error::InsufficientData { have: 2, .. })
        ));
    }

    #[test]
    fn regression_points() {
        let mut sea = team("SEA", 513, 698);
        sea.wins = 61;
        sea.losses = 101;
        let recs = vec![team("A", 700, 700), sea, team("C", 650, 600)];
        let ds = build_season_dataset(&recs, 2000).unwrap();
        let pts = to_regression_points(&ds).unwrap();
        assert_eq!((pts[0].x, pts[0].y), (0.0, 0.5));
        assert!((pts[1].x - (-185.0 / 162.0)).abs() < 1e-15);
        assert!((pts[1].x + 1.1420).abs() < 1e-4);
        assert!((pts[1].y - 0.37654).abs() < 1e-5);
        assert_eq!(pts[1].weight, 162);
    }

    #[test]
    fn ties_do_not_count_as_decisions() {
        let mut t = team("A", 700, 700);
        t.wins = 80;
        t.losses = 80;
        t.games = 162;
        assert!(t.validate().is_ok());
        assert_eq!(t.win_pct(), 0.5);
    }

    #[test]
    fn write_then_parse() {
        let recs = vec![team("A", 700, 650), team("B", 600, 650)];
        let mut buf = Vec::new();
        write_standings(&recs, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with(HEAD));
        assert_eq!(parse_standings(buf.as_slice()).unwrap(), recs);

        let mut empty = Vec::new();
        write_standings(&[], &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), HEAD);
    }
}
