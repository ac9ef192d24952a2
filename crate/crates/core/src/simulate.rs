//! Synthetic seasons drawn from the exact Pythagorean model, used to check
//! the estimator against a known exponent.
//!
//! Random numbers come from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Run `i` of an experiment uses seed `cfg.seed ^ i`, so
//! every run can be reproduced on its own and results do not depend on how
//! runs are scheduled across threads.
//!
//! Each team's scoring and allowing rates are drawn independently from a
//! normal distribution centred on the league average (resampled until
//! positive). Wins are binomial given the Pythagorean probability; teams
//! are independent, so the league is not schedule-consistent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimator::{fit_dataset, GammaEstimate, InterceptMode};
use crate::formula::pythag_raw;
use crate::ingest::{build_season_dataset, SeasonDataset, TeamSeason};
use crate::units::{Exponent, LeagueAverage};

/// Season number stamped on simulated records.
pub const SIM_SEASON: i32 = 0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub n_teams: usize,
    pub games: u32,
    pub true_gamma: Exponent,
    /// Per-game league average.
    pub r_ave: LeagueAverage,
    /// Standard deviation of team run rates around `r_ave`, runs per game.
    pub spread: f64,
    /// Shift scoring and allowing rates so both average exactly `r_ave`.
    pub balance: bool,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_teams < 3 {
            return Err(Error::domain(format!(
                "need at least 3 teams, got {}",
                self.n_teams
            )));
        }
        if self.games == 0 {
            return Err(Error::domain("games must be positive"));
        }
        if !(self.spread.is_finite() && self.spread >= 0.0) {
            return Err(Error::domain(format!(
                "spread must be a non-negative number, got {}",
                self.spread
            )));
        }
        if self.r_ave.value() - 3.0 * self.spread <= 0.0 {
            return Err(Error::domain(format!(
                "spread {} too large for league average {} (need r_ave - 3*spread > 0)",
                self.spread,
                self.r_ave.value()
            )));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        SimConfig { seed, ..self }
    }

    /// Config for run `index` of an experiment.
    pub fn for_run(self, index: u64) -> Self {
        self.with_seed(self.seed ^ index)
    }
}

const MAX_LEAGUE_DRAWS: usize = 1000;

fn draw_rates(cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<(Vec<f64>, Vec<f64>)> {
    let center = cfg.r_ave.value();
    if cfg.spread == 0.0 {
        return Ok((vec![center; cfg.n_teams], vec![center; cfg.n_teams]));
    }
    let normal = Normal::new(center, cfg.spread).map_err(|e| Error::domain(e.to_string()))?;
    let positive = |rng: &mut ChaCha8Rng| loop {
        let v = normal.sample(rng);
        if v > 0.0 {
            break v;
        }
    };
    for _ in 0..MAX_LEAGUE_DRAWS {
        let mut rs = Vec::with_capacity(cfg.n_teams);
        let mut ra = Vec::with_capacity(cfg.n_teams);
        for _ in 0..cfg.n_teams {
            rs.push(positive(rng));
            ra.push(positive(rng));
        }
        if cfg.balance {
            let n = cfg.n_teams as f64;
            let shift_rs = center - rs.iter().sum::<f64>() / n;
            let shift_ra = center - ra.iter().sum::<f64>() / n;
            rs.iter_mut().for_each(|v| *v += shift_rs);
            ra.iter_mut().for_each(|v| *v += shift_ra);
        }
        if rs.iter().chain(&ra).all(|&v| v > 0.0) {
            return Ok((rs, ra));
        }
    }
    Err(Error::domain("could not draw a league with positive run rates"))
}

/// One simulated season.
pub fn simulate_season(cfg: &SimConfig) -> Result<SeasonDataset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (rs, ra) = draw_rates(cfg, &mut rng)?;
    let games = f64::from(cfg.games);
    let gamma = cfg.true_gamma.value();

    let mut records = Vec::with_capacity(cfg.n_teams);
    for (i, (&s, &a)) in rs.iter().zip(&ra).enumerate() {
        let p = pythag_raw(s, a, gamma);
        let wins = Binomial::new(u64::from(cfg.games), p)
            .map_err(|e| Error::domain(e.to_string()))?
            .sample(&mut rng) as u32;
        records.push(TeamSeason {
            season: SIM_SEASON,
            team: format!("T{:02}", i + 1),
            league: "SIM".into(),
            games: cfg.games,
            wins,
            losses: cfg.games - wins,
            runs_scored: (s * games).round() as u32,
            runs_allowed: (a * games).round() as u32,
        });
    }
    build_season_dataset(&records, SIM_SEASON)
}

/// Estimates γ on `runs` independent simulated seasons (free intercept,
/// m = 1). Results are in run order.
pub fn gamma_sweep(cfg: &SimConfig, runs: u64, level: f64) -> Result<Vec<GammaEstimate>> {
    cfg.validate()?;
    let results: Vec<Result<GammaEstimate>> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let ds = simulate_season(&cfg.for_run(i))?;
            Ok(fit_dataset(&ds, InterceptMode::Free, level, 1)?.gamma)
        })
        .collect();
    results.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coverage {
    pub runs: u64,
    pub covered: u64,
    pub level: f64,
}

impl Coverage {
    pub fn fraction(&self) -> f64 {
        self.covered as f64 / self.runs as f64
    }
}

/// Fraction of nominal `level` intervals that contain the true exponent.
pub fn coverage_experiment(cfg: &SimConfig, runs: u64, level: f64) -> Result<Coverage> {
    if runs < 100 {
        return Err(Error::domain(format!(
            "coverage needs at least 100 runs, got {runs}"
        )));
    }
    let truth = cfg.true_gamma.value();
    let est = gamma_sweep(cfg, runs, level)?;
    Ok(Coverage {
        runs,
        covered: est.iter().filter(|g| g.contains(truth)).count() as u64,
        level,
    })
}
