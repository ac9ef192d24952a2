//! Newtypes for the quantities that flow through the formulas.
//!
//! Runs are measured either per game or as season totals. Every run-bearing
//! value carries its [`Unit`] so that a per-game slope is never combined
//! with a per-season league average; mixing the two changes the implied
//! exponent by a factor equal to the number of games played.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Unit {
    /// Runs per game. The canonical unit.
    #[default]
    PerGame,
    /// Runs per season.
    Total,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::PerGame => "per-game",
            Unit::Total => "total",
        })
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-game" => Ok(Unit::PerGame),
            "total" => Ok(Unit::Total),
            other => Err(Error::domain(format!(
                "unknown unit {other:?} (expected per-game or total)"
            ))),
        }
    }
}

pub(crate) fn ensure_same_unit(expected: Unit, found: Unit) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::UnitMismatch { expected, found })
    }
}

fn positive(what: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(format!("{what} must be positive, got {value}")))
    }
}

fn check_games(games: u32) -> Result<f64> {
    if games == 0 {
        Err(Error::domain("games played must be positive"))
    } else {
        Ok(f64::from(games))
    }
}

/// Runs scored or allowed, tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRate {
    value: f64,
    unit: Unit,
}

impl RunRate {
    pub fn new(value: f64, unit: Unit) -> Result<Self> {
        Ok(RunRate {
            value: positive("run rate", value)?,
            unit,
        })
    }

    pub fn per_game(value: f64) -> Result<Self> {
        Self::new(value, Unit::PerGame)
    }

    pub fn total(value: f64) -> Result<Self> {
        Self::new(value, Unit::Total)
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn unit(self) -> Unit {
        self.unit
    }

    pub fn to_per_game(self, games: u32) -> Result<Self> {
        let g = check_games(games)?;
        Ok(match self.unit {
            Unit::PerGame => self,
            Unit::Total => RunRate {
                value: self.value / g,
                unit: Unit::PerGame,
            },
        })
    }

    pub fn to_total(self, games: u32) -> Result<Self> {
        let g = check_games(games)?;
        Ok(match self.unit {
            Unit::Total => self,
            Unit::PerGame => RunRate {
                value: self.value * g,
                unit: Unit::Total,
            },
        })
    }
}

/// The Pythagorean exponent. Always strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(gamma: f64) -> Result<Self> {
        positive("exponent", gamma).map(Exponent)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Slope of winning percentage against run differential. The unit is that
/// of the run differential in the denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slope {
    beta: f64,
    unit: Unit,
}

impl Slope {
    pub fn new(beta: f64, unit: Unit) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::domain(format!("slope must be finite, got {beta}")));
        }
        Ok(Slope { beta, unit })
    }

    pub fn value(self) -> f64 {
        self.beta
    }

    pub fn unit(self) -> Unit {
        self.unit
    }
}

/// League-average runs scored per team; the expansion point of the
/// first-order approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeagueAverage {
    r_ave: f64,
    unit: Unit,
}

impl LeagueAverage {
    pub fn new(r_ave: f64, unit: Unit) -> Result<Self> {
        Ok(LeagueAverage {
            r_ave: positive("league average", r_ave)?,
            unit,
        })
    }

    pub fn per_game(r_ave: f64) -> Result<Self> {
        Self::new(r_ave, Unit::PerGame)
    }

    pub fn value(self) -> f64 {
        self.r_ave
    }

    pub fn unit(self) -> Unit {
        self.unit
    }
}

/// Where a winning percentage came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpSource {
    /// The exact Pythagorean formula; always strictly inside (0, 1).
    Exact,
    /// A linear or truncated-series approximant; may leave [0, 1].
    Approximation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinPct {
    value: f64,
    source: WpSource,
}

impl WinPct {
    pub(crate) fn exact(value: f64) -> Self {
        WinPct {
            value,
            source: WpSource::Exact,
        }
    }

    pub(crate) fn approx(value: f64) -> Self {
        WinPct {
            value,
            source: WpSource::Approximation,
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn source(self) -> WpSource {
        self.source
    }

    /// Presentation helper; the formulas themselves never clamp.
    pub fn clamped(self) -> f64 {
        self.value.clamp(0.0, 1.0)
    }
}
