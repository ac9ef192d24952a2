//! The Pythagorean won-loss formula and its first-order linearisation.
//!
//! A team scoring `RS` runs and allowing `RA` is expected to win
//! `RS^γ / (RS^γ + RA^γ)` of its games. Expanding about the league average
//! `R_ave` gives the run-differential model `0.500 + β(RS − RA)` with
//! `β = γ / (4 R_ave)`, so a fitted slope maps straight back to an exponent.
//!
//! * [`formula`] and [`taylor`]: the exact formula and its approximants.
//! * [`estimator`]: per-season least squares and confidence intervals for γ.
//! * [`ingest`]: standings files and league averages.
//! * [`simulate`]: synthetic seasons with a known γ.
//! * [`report`]: table, grid and SVG renderers used by the CLI.

pub mod error;
pub mod estimator;
pub mod formula;
pub mod ingest;
pub mod report;
pub mod simulate;
pub mod special;
pub mod taylor;
pub mod units;

pub use error::{Error, Result};
pub use estimator::{
    beta_ci, fit_all_seasons, fit_dataset, fit_season, gamma_estimate, GammaEstimate,
    InterceptMode, LinearFit, MPolicy, RegressionPoint, SeasonFit, SeasonRow,
};
pub use formula::{
    appendix_log_form, appendix_ratio_form, beta_from_gamma, exact_logit_identity,
    gamma_from_beta, linear_wp, pythagorean_wp, r_ave_from_beta_gamma,
};
pub use ingest::{
    build_season_dataset, parse_standings, to_regression_points, SeasonDataset, TeamSeason,
};
pub use simulate::{coverage_experiment, simulate_season, Coverage, SimConfig};
pub use special::t_quantile;
pub use taylor::{taylor1_wp, taylor2_wp};
pub use units::{Exponent, LeagueAverage, RunRate, Slope, Unit, WinPct, WpSource};
