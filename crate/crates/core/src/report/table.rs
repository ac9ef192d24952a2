use std::fmt::Write;

use crate::estimator::SeasonRow;
use crate::report::Format;

#[derive(Debug, Clone, Copy)]
pub struct TableOptions {
    pub format: Format,
    pub level: f64,
    pub m: u32,
}

pub const CSV_HEADER: &str = "season,alpha,beta,r_ave,gamma,gamma_low,gamma_high,r_squared";

/// One line per season in the column order season, α̂, β̂, R_ave, γ̂,
/// γ lower, γ upper, R². CSV carries 6 decimals and omits failed seasons;
/// Markdown rounds to 3 and prints the failure in place of the row.
pub fn render_table(rows: &[SeasonRow], opts: TableOptions) -> String {
    let mut out = String::new();
    match opts.format {
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                if let Ok(sf) = &row.result {
                    let (f, g) = (&sf.fit, &sf.gamma);
                    writeln!(
                        out,
                        "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                        row.season,
                        f.alpha_hat,
                        f.beta_hat,
                        g.r_ave_used.value(),
                        g.gamma_hat,
                        g.ci_low,
                        g.ci_high,
                        f.r_squared
                    )
                    .unwrap();
                }
            }
        }
        Format::Markdown => {
            let pct = opts.level * 100.0;
            writeln!(
                out,
                "| Season | α̂ | β̂ | R_ave | γ̂ | {pct}% lower γ̂ | {pct}% upper γ̂ | R² |"
            )
            .unwrap();
            out.push_str("|---:|---:|---:|---:|---:|---:|---:|---:|\n");
            for row in rows {
                match &row.result {
                    Ok(sf) => {
                        let (f, g) = (&sf.fit, &sf.gamma);
                        writeln!(
                            out,
                            "| {} | {:.3} | {:.3} | {:.3} | {:.3} | {:.3} | {:.3} | {:.3} |",
                            row.season,
                            f.alpha_hat,
                            f.beta_hat,
                            g.r_ave_used.value(),
                            g.gamma_hat,
                            g.ci_low,
                            g.ci_high,
                            f.r_squared
                        )
                        .unwrap();
                    }
                    Err(e) => {
                        writeln!(out, "| {} | error: {e} | | | | | | |", row.season).unwrap();
                    }
                }
            }
            if opts.m > 1 {
                writeln!(
                    out,
                    "\nIntervals Bonferroni-corrected for m = {} (per-interval significance {:.6}).",
                    opts.m,
                    (1.0 - opts.level) / f64::from(opts.m)
                )
                .unwrap();
            }
        }
    }
    out
}
