//! Per-season least-squares fits of winning percentage on run differential,
//! and the confidence intervals for the implied exponent.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::{to_regression_points, SeasonDataset};
use crate::special::{t_quantile, t_two_sided_p};
use crate::units::{ensure_same_unit, Exponent, LeagueAverage, Slope, Unit};

/// One team as a regression observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionPoint {
    /// Run differential, `rs − ra`.
    pub x: f64,
    /// Observed winning percentage.
    pub y: f64,
    /// Games played. Kept for diagnostics; the fit is unweighted.
    pub weight: u32,
    pub unit: Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterceptMode {
    /// Estimate α alongside β.
    #[default]
    Free,
    /// Pin α to 0.500 and fit through the origin of `(x, y − 0.5)`.
    FixedAtHalf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub se_beta: f64,
    /// Residual degrees of freedom.
    pub df: u64,
    pub r_squared: f64,
    pub n: usize,
    pub intercept_mode: InterceptMode,
    /// Unit of the regressor.
    pub unit: Unit,
}

impl LinearFit {
    pub fn slope(&self) -> Slope {
        Slope::new(self.beta_hat, self.unit).expect("fitted slope is finite")
    }

    /// `β̂ / se(β̂)`; infinite for an exact fit with nonzero slope.
    pub fn t_statistic(&self) -> f64 {
        if self.se_beta == 0.0 {
            if self.beta_hat == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(self.beta_hat)
            }
        } else {
            self.beta_hat / self.se_beta
        }
    }

    /// Two-sided p-value for `β = 0`. Diagnostic only.
    pub fn beta_p_value(&self) -> f64 {
        t_two_sided_p(self.t_statistic(), self.df as f64)
    }
}

/// An exponent estimate with its confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaEstimate {
    /// `4 β̂ R_ave`. Stored raw: a fit can in principle produce a
    /// non-positive slope, see [`GammaEstimate::exponent`].
    pub gamma_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Family-wise confidence level, e.g. 0.95.
    pub level: f64,
    /// Bonferroni family size.
    pub m: u32,
    pub r_ave_used: LeagueAverage,
}

impl GammaEstimate {
    pub fn exponent(&self) -> Result<Exponent> {
        Exponent::new(self.gamma_hat)
    }

    pub fn contains(&self, gamma: f64) -> bool {
        self.ci_low <= gamma && gamma <= self.ci_high
    }
}

/// Ordinary least squares of `y` on `x`.
pub fn fit_season(points: &[RegressionPoint], mode: InterceptMode) -> Result<LinearFit> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, have: n });
    }
    let unit = points[0].unit;
    for p in points {
        ensure_same_unit(unit, p.unit)?;
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(Error::domain("regression point is not finite"));
        }
    }
    let nf = n as f64;
    let x_bar = points.iter().map(|p| p.x).sum::<f64>() / nf;
    let y_bar = points.iter().map(|p| p.y).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.x - x_bar).powi(2)).sum();
    let tss: f64 = points.iter().map(|p| (p.y - y_bar).powi(2)).sum();
    if sxx / nf <= f64::EPSILON * x_bar.abs().max(1.0).powi(2) {
        return Err(Error::DegenerateDesign);
    }

    let (alpha, beta, df, denom) = match mode {
        InterceptMode::Free => {
            let sxy: f64 = points.iter().map(|p| (p.x - x_bar) * (p.y - y_bar)).sum();
            let beta = sxy / sxx;
            (y_bar - beta * x_bar, beta, n - 2, sxx)
        }
        InterceptMode::FixedAtHalf => {
            let sxx0: f64 = points.iter().map(|p| p.x * p.x).sum();
            let sxy0: f64 = points.iter().map(|p| p.x * (p.y - 0.5)).sum();
            (0.5, sxy0 / sxx0, n - 1, sxx0)
        }
    };
    let rss: f64 = points
        .iter()
        .map(|p| (p.y - alpha - beta * p.x).powi(2))
        .sum();
    let sigma2 = rss / df as f64;
    let se_beta = (sigma2 / denom).sqrt();
    let r_squared = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(LinearFit {
        alpha_hat: alpha,
        beta_hat: beta,
        se_beta,
        df: df as u64,
        r_squared,
        n,
        intercept_mode: mode,
        unit,
    })
}

/// Bonferroni-adjusted confidence interval for β̂: `β̂ ± t(1 − (1−level)/2m) · se`.
pub fn beta_ci(fit: &LinearFit, level: f64, m: u32) -> Result<(f64, f64)> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(format!("confidence level must be in (0, 1), got {level}")));
    }
    if m == 0 {
        return Err(Error::domain("Bonferroni family size must be at least 1"));
    }
    if fit.se_beta == 0.0 {
        return Ok((fit.beta_hat, fit.beta_hat));
    }
    let alpha = bonferroni_alpha(level, m);
    let t = t_quantile(1.0 - alpha / 2.0, fit.df)?;
    let half = t * fit.se_beta;
    Ok((fit.beta_hat - half, fit.beta_hat + half))
}

/// Per-test significance level `(1 − level) / m`.
pub fn bonferroni_alpha(level: f64, m: u32) -> f64 {
    (1.0 - level) / f64::from(m)
}

/// `γ̂ = 4 β̂ R_ave` with the β interval scaled by the same constant.
/// `R_ave` is treated as known.
pub fn gamma_estimate(
    fit: &LinearFit,
    r_ave: LeagueAverage,
    level: f64,
    m: u32,
) -> Result<GammaEstimate> {
    ensure_same_unit(fit.unit, r_ave.unit())?;
    let (lo, hi) = beta_ci(fit, level, m)?;
    let k = 4.0 * r_ave.value();
    Ok(GammaEstimate {
        gamma_hat: k * fit.beta_hat,
        ci_low: k * lo,
        ci_high: k * hi,
        level,
        m,
        r_ave_used: r_ave,
    })
}

/// How the Bonferroni family size is chosen for a multi-season run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MPolicy {
    /// m = 1: each season's interval at the nominal level.
    #[default]
    Unadjusted,
    /// m = number of seasons in the run.
    SeasonCount,
    Fixed(u32),
}

impl MPolicy {
    pub fn resolve(self, seasons: usize) -> u32 {
        match self {
            MPolicy::Unadjusted => 1,
            MPolicy::SeasonCount => u32::try_from(seasons.max(1)).unwrap_or(u32::MAX),
            MPolicy::Fixed(m) => m,
        }
    }
}

#[derive(Debug)]
pub struct SeasonFit {
    pub fit: LinearFit,
    pub gamma: GammaEstimate,
}

#[derive(Debug)]
pub struct SeasonRow {
    pub season: i32,
    pub result: Result<SeasonFit>,
}

/// Fits every season independently. A failing season yields an `Err` row;
/// the others are unaffected. Rows come back sorted by season.
pub fn fit_all_seasons(
    datasets: &[SeasonDataset],
    mode: InterceptMode,
    level: f64,
    policy: MPolicy,
) -> Vec<SeasonRow> {
    let m = policy.resolve(datasets.len());
    let mut rows: Vec<SeasonRow> = datasets
        .par_iter()
        .map(|ds| SeasonRow {
            season: ds.season,
            result: fit_dataset(ds, mode, level, m),
        })
        .collect();
    rows.sort_by_key(|r| r.season);
    rows
}

/// Fit and exponent estimate for a single season.
pub fn fit_dataset(
    ds: &SeasonDataset,
    mode: InterceptMode,
    level: f64,
    m: u32,
) -> Result<SeasonFit> {
    let points = to_regression_points(ds)?;
    let fit = fit_season(&points, mode)?;
    let gamma = gamma_estimate(&fit, ds.r_ave, level, m)?;
    Ok(SeasonFit { fit, gamma })
}
