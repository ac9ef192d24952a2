//! The Pythagorean won-loss formula, the run-differential linear model, and
//! the single-variable approximants obtained by substituting logarithms and
//! truncating each series after its linear term.

use crate::error::{Error, Result};
use crate::units::{ensure_same_unit, Exponent, LeagueAverage, RunRate, Slope, Unit, WinPct};

/// `x^gamma` evaluated as `exp(gamma * ln x)`; `x` must be positive.
#[inline]
pub(crate) fn pow_pos(x: f64, gamma: f64) -> f64 {
    (gamma * x.ln()).exp()
}

/// `x^γ / (x^γ + y^γ)` on raw positive reals, no unit checks.
#[inline]
pub fn pythag_raw(x: f64, y: f64, gamma: f64) -> f64 {
    let xg = pow_pos(x, gamma);
    let yg = pow_pos(y, gamma);
    xg / (xg + yg)
}

/// Expected winning percentage `RS^γ / (RS^γ + RA^γ)`.
pub fn pythagorean_wp(rs: RunRate, ra: RunRate, gamma: Exponent) -> Result<WinPct> {
    ensure_same_unit(rs.unit(), ra.unit())?;
    Ok(WinPct::exact(pythag_raw(rs.value(), ra.value(), gamma.value())))
}

/// The run-differential model `0.500 + β(RS − RA)`. Never clamped.
pub fn linear_wp(rs: RunRate, ra: RunRate, beta: Slope) -> Result<WinPct> {
    ensure_same_unit(rs.unit(), ra.unit())?;
    ensure_same_unit(beta.unit(), rs.unit())?;
    Ok(WinPct::approx(0.5 + beta.value() * (rs.value() - ra.value())))
}

/// `γ = 4 β R_ave`. Fails when the slope does not map to a positive exponent.
pub fn gamma_from_beta(beta: Slope, r_ave: LeagueAverage) -> Result<Exponent> {
    ensure_same_unit(r_ave.unit(), beta.unit())?;
    let gamma = 4.0 * beta.value() * r_ave.value();
    Exponent::new(gamma).map_err(|_| {
        Error::domain(format!(
            "slope {} implies a non-positive exponent {gamma}",
            beta.value()
        ))
    })
}

/// `β = γ / (4 R_ave)`, in the unit of the league average.
pub fn beta_from_gamma(gamma: Exponent, r_ave: LeagueAverage) -> Slope {
    Slope::new(gamma.value() / (4.0 * r_ave.value()), r_ave.unit())
        .expect("ratio of positive finite values is finite")
}

/// `R_ave = γ / (4 β)`: the scoring level at which a slope and an exponent agree.
pub fn r_ave_from_beta_gamma(beta: Slope, gamma: Exponent) -> Result<LeagueAverage> {
    if beta.value() <= 0.0 {
        return Err(Error::domain(format!(
            "slope must be positive, got {}",
            beta.value()
        )));
    }
    LeagueAverage::new(gamma.value() / (4.0 * beta.value()), beta.unit())
}

fn log_ratio(rs: RunRate, ra: RunRate) -> Result<f64> {
    ensure_same_unit(rs.unit(), ra.unit())?;
    Ok(rs.value().ln() - ra.value().ln())
}

/// `ln RS − ln RA`.
pub fn log_run_ratio(rs: RunRate, ra: RunRate) -> Result<f64> {
    log_ratio(rs, ra)
}

/// `1/2 + (γ/4)(ln RS − ln RA)`: exponential and geometric series each cut
/// after the linear term. Scale-invariant, like the exact formula.
pub fn appendix_log_form(rs: RunRate, ra: RunRate, gamma: Exponent) -> Result<WinPct> {
    let u = log_ratio(rs, ra)?;
    Ok(WinPct::approx(0.5 + 0.25 * gamma.value() * u))
}

/// `1/2 + (γ/4)(RS − RA)/RA`: the log form with `ln(1 + x) ≈ x`.
pub fn appendix_ratio_form(rs: RunRate, ra: RunRate, gamma: Exponent) -> Result<WinPct> {
    ensure_same_unit(rs.unit(), ra.unit())?;
    let rel = (rs.value() - ra.value()) / ra.value();
    Ok(WinPct::approx(0.5 + 0.25 * gamma.value() * rel))
}

/// `(1 + exp(−γ(ln RS − ln RA)))⁻¹`. Algebraically identical to
/// [`pythagorean_wp`]; kept as an independent evaluation route.
pub fn exact_logit_identity(rs: RunRate, ra: RunRate, gamma: Exponent) -> Result<WinPct> {
    let u = log_ratio(rs, ra)?;
    Ok(WinPct::exact(1.0 / (1.0 + (-gamma.value() * u).exp())))
}

/// Converts a per-season slope into a per-game one (or back) given games played.
pub fn rescale_slope(beta: Slope, to: Unit, games: u32) -> Result<Slope> {
    if games == 0 {
        return Err(Error::domain("games played must be positive"));
    }
    let g = f64::from(games);
    let value = match (beta.unit(), to) {
        (a, b) if a == b => beta.value(),
        // β is per unit of run differential: per-game differentials are
        // `games` times smaller than season totals.
        (Unit::Total, Unit::PerGame) => beta.value() * g,
        (Unit::PerGame, Unit::Total) => beta.value() / g,
        _ => unreachable!(),
    };
    Slope::new(value, to)
}
