//! Text renderers for the command-line front end.

mod grid;
mod svg;
mod table;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use grid::{approx_grid, ApproxGridReport, ApproxSummary, GridAxis, MAX_GRID_POINTS};
pub use svg::plot_season;
pub use table::{render_table, TableOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Markdown => "markdown",
        })
    }
}
