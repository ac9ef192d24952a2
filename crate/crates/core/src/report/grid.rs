//! Approximation error of the linearised models over a rectangle of
//! (runs scored, runs allowed).

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::formula::{
    appendix_log_form, appendix_ratio_form, linear_wp, pythagorean_wp,
};
use crate::report::Format;
use crate::taylor::{taylor1_wp, taylor2_wp};
use crate::units::{ensure_same_unit, Exponent, LeagueAverage, RunRate, Slope, Unit};

pub const MAX_GRID_POINTS: u64 = 10_000_000;

/// Inclusive range `min, min + step, …, ≤ max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridAxis {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min > 0.0 && min.is_finite() && max.is_finite()) {
            return Err(Error::Domain(format!("grid bounds must be positive, got [{min}, {max}]")));
        }
        if max < min {
            return Err(Error::Domain(format!("grid max {max} below min {min}")));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Domain(format!("grid step must be positive, got {step}")));
        }
        Ok(GridAxis { min, max, step })
    }

    pub fn len(&self) -> u64 {
        ((self.max - self.min) / self.step + 1e-9).floor() as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn at(&self, i: u64) -> f64 {
        self.min + i as f64 * self.step
    }
}

/// Error statistics of one approximant.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxSummary {
    pub name: &'static str,
    pub max_abs_error: f64,
    /// (rs, ra) where the error peaks; first occurrence in row-major order.
    pub argmax: (f64, f64),
    pub min_wp: f64,
    pub max_wp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxGridReport {
    pub gamma: Exponent,
    pub r_ave: LeagueAverage,
    pub unit: Unit,
    pub rs_range: GridAxis,
    pub ra_range: GridAxis,
    pub points: u64,
    /// Exact formula; its error columns are zero.
    pub exact: ApproxSummary,
    pub approximants: Vec<ApproxSummary>,
}

struct Acc {
    s: ApproxSummary,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Acc {
            s: ApproxSummary {
                name,
                max_abs_error: -1.0,
                argmax: (f64::NAN, f64::NAN),
                min_wp: f64::INFINITY,
                max_wp: f64::NEG_INFINITY,
            },
        }
    }

    fn push(&mut self, rs: f64, ra: f64, wp: f64, exact: f64) {
        let err = (wp - exact).abs();
        if err > self.s.max_abs_error {
            self.s.max_abs_error = err;
            self.s.argmax = (rs, ra);
        }
        self.s.min_wp = self.s.min_wp.min(wp);
        self.s.max_wp = self.s.max_wp.max(wp);
    }
}

/// Evaluates the exact formula and every approximant on the grid. When
/// `beta` is given, the linear model with that slope is reported too.
pub fn approx_grid(
    gamma: Exponent,
    r_ave: LeagueAverage,
    rs_range: GridAxis,
    ra_range: GridAxis,
    beta: Option<Slope>,
) -> Result<ApproxGridReport> {
    let unit = r_ave.unit();
    if let Some(b) = beta {
        ensure_same_unit(unit, b.unit())?;
    }
    let points = rs_range.len().saturating_mul(ra_range.len());
    if points > MAX_GRID_POINTS {
        return Err(Error::Resource(format!(
            "grid has {points} points, limit is {MAX_GRID_POINTS}"
        )));
    }

    let mut exact_acc = Acc::new("exact");
    let mut accs = vec![
        Acc::new("taylor1"),
        Acc::new("taylor2"),
        Acc::new("appendix_log"),
        Acc::new("appendix_ratio"),
    ];
    if beta.is_some() {
        accs.push(Acc::new("linear"));
    }

    for i in 0..rs_range.len() {
        let rs_v = rs_range.at(i);
        let rs = RunRate::new(rs_v, unit)?;
        for j in 0..ra_range.len() {
            let ra_v = ra_range.at(j);
            let ra = RunRate::new(ra_v, unit)?;
            let exact = pythagorean_wp(rs, ra, gamma)?.value();
            exact_acc.push(rs_v, ra_v, exact, exact);
            let vals = [
                taylor1_wp(rs, ra, gamma, r_ave)?.value(),
                taylor2_wp(rs, ra, gamma, r_ave)?.value(),
                appendix_log_form(rs, ra, gamma)?.value(),
                appendix_ratio_form(rs, ra, gamma)?.value(),
            ];
            for (acc, wp) in accs.iter_mut().zip(vals) {
                acc.push(rs_v, ra_v, wp, exact);
            }
            if let Some(b) = beta {
                accs[4].push(rs_v, ra_v, linear_wp(rs, ra, b)?.value(), exact);
            }
        }
    }

    Ok(ApproxGridReport {
        gamma,
        r_ave,
        unit,
        rs_range,
        ra_range,
        points,
        exact: exact_acc.s,
        approximants: accs.into_iter().map(|a| a.s).collect(),
    })
}

impl ApproxGridReport {
    pub fn get(&self, name: &str) -> Option<&ApproxSummary> {
        self.approximants.iter().find(|s| s.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        let rows = std::iter::once(&self.exact).chain(&self.approximants);
        match format {
            Format::Csv => {
                out.push_str("model,max_abs_error,argmax_rs,argmax_ra,min_wp,max_wp\n");
                for s in rows {
                    writeln!(
                        out,
                        "{},{:.6},{},{},{:.6},{:.6}",
                        s.name, s.max_abs_error, s.argmax.0, s.argmax.1, s.min_wp, s.max_wp
                    )
                    .unwrap();
                }
            }
            Format::Markdown => {
                writeln!(
                    out,
                    "γ = {}, R_ave = {} ({}), RS ∈ [{}, {}] step {}, RA ∈ [{}, {}] step {}, {} points\n",
                    self.gamma.value(),
                    self.r_ave.value(),
                    self.unit,
                    self.rs_range.min,
                    self.rs_range.max,
                    self.rs_range.step,
                    self.ra_range.min,
                    self.ra_range.max,
                    self.ra_range.step,
                    self.points
                )
                .unwrap();
                out.push_str("| Model | Max abs error | At (RS, RA) | Min WP | Max WP |\n");
                out.push_str("|---|---:|---:|---:|---:|\n");
                for s in rows {
                    writeln!(
                        out,
                        "| {} | {:.4} | ({}, {}) | {:.3} | {:.3} |",
                        s.name, s.max_abs_error, s.argmax.0, s.argmax.1, s.min_wp, s.max_wp
                    )
                    .unwrap();
                }
            }
        }
        out
    }
}
