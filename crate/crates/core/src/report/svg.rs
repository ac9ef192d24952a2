//! Standalone SVG scatter of winning percentage against run differential.

use std::fmt::Write;

use crate::error::Result;
use crate::estimator::{fit_dataset, InterceptMode};
use crate::ingest::{to_regression_points, SeasonDataset};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Scale {
    lo: f64,
    hi: f64,
    out_lo: f64,
    out_hi: f64,
}

impl Scale {
    fn map(&self, v: f64) -> f64 {
        self.out_lo + (v - self.lo) / (self.hi - self.lo) * (self.out_hi - self.out_lo)
    }
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span <= 0.0 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo - 0.05 * span, hi + 0.05 * span)
    }
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-12 {
        out.push(if t.abs() < 1e-12 { 0.0 } else { t });
        t += step;
    }
    out
}

/// Scatter of the season's teams with the least-squares line, annotated
/// with β̂, γ̂, R² and the largest absolute residual.
pub fn plot_season(ds: &SeasonDataset, mode: InterceptMode) -> Result<String> {
    let points = to_regression_points(ds)?;
    let sf = fit_dataset(ds, mode, 0.95, 1)?;
    let fit = &sf.fit;

    let (x_lo, x_hi) = padded(
        points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
    );
    let (y_lo, y_hi) = padded(
        points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
    );
    let sx = Scale {
        lo: x_lo,
        hi: x_hi,
        out_lo: MARGIN_LEFT,
        out_hi: WIDTH - MARGIN_RIGHT,
    };
    let sy = Scale {
        lo: y_lo,
        hi: y_hi,
        out_lo: HEIGHT - MARGIN_BOTTOM,
        out_hi: MARGIN_TOP,
    };
    let max_resid = points
        .iter()
        .map(|p| (p.y - fit.alpha_hat - fit.beta_hat * p.x).abs())
        .fold(0.0, f64::max);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">Season {}: winning percentage vs run differential</text>"#,
        WIDTH / 2.0,
        ds.season
    )
    .unwrap();

    // axes and ticks
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let mut axis = format!("M{x0:.1},{y1:.1} V{y0:.1} H{x1:.1}");
    let mut labels = String::new();
    for t in ticks(x_lo, x_hi) {
        let px = sx.map(t);
        write!(axis, " M{px:.1},{y0:.1} v5").unwrap();
        writeln!(
            labels,
            r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle">{t:.1}</text>"#,
            y0 + 18.0
        )
        .unwrap();
    }
    for t in ticks(y_lo, y_hi) {
        let py = sy.map(t);
        write!(axis, " M{x0:.1},{py:.1} h-5").unwrap();
        writeln!(
            labels,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{t:.3}</text>"#,
            x0 - 8.0,
            py + 4.0
        )
        .unwrap();
    }
    writeln!(s, r#"<path d="{axis}" stroke="black" fill="none"/>"#).unwrap();
    s.push_str(&labels);
    writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">run differential per game (RS − RA)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">winning percentage</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();

    for (p, rec) in points.iter().zip(&ds.records) {
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="steelblue" fill-opacity="0.8" data-team="{}"/>"#,
            sx.map(p.x),
            sy.map(p.y),
            escape(&rec.team)
        )
        .unwrap();
    }

    let line_y = |x: f64| fit.alpha_hat + fit.beta_hat * x;
    writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="firebrick" stroke-width="2"/>"#,
        sx.map(x_lo),
        sy.map(line_y(x_lo)),
        sx.map(x_hi),
        sy.map(line_y(x_hi))
    )
    .unwrap();

    let notes = [
        format!("α̂ = {:.4}", fit.alpha_hat),
        format!("β̂ = {:.4}", fit.beta_hat),
        format!("γ̂ = {:.3}", sf.gamma.gamma_hat),
        format!("R² = {:.3}", fit.r_squared),
        format!("max |residual| = {max_resid:.6}"),
    ];
    for (i, n) in notes.iter().enumerate() {
        writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
            x0 + 12.0,
            y1 + 16.0 + 16.0 * i as f64,
            escape(n)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
