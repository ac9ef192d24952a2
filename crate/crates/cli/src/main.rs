//! `pythag`: Pythagorean won-loss formula toolkit.
//!
//! Exit status: 0 on success, 1 on a data or domain failure, 2 on a usage
//! error.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pythag_core::estimator::{bonferroni_alpha, fit_dataset, MPolicy};
use pythag_core::ingest::{split_seasons, write_standings};
use pythag_core::report::{approx_grid, plot_season, render_table, Format, GridAxis, TableOptions};
use pythag_core::simulate::gamma_sweep;
use pythag_core::{
    appendix_log_form, appendix_ratio_form, build_season_dataset, coverage_experiment,
    fit_all_seasons, gamma_from_beta, linear_wp, parse_standings, pythagorean_wp, simulate_season,
    taylor1_wp, taylor2_wp, Error, Exponent, InterceptMode, LeagueAverage, RunRate, SeasonRow,
    SimConfig, Slope, TeamSeason, Unit, WinPct,
};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "pythag", version, about = "Pythagorean won-loss formula and its linear approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Winning percentage from runs scored and allowed.
    Predict(PredictArgs),
    /// Least-squares fit for a single season.
    Fit(FitArgs),
    /// One row per season: α̂, β̂, R_ave, γ̂, interval, R².
    Table(TableArgs),
    /// Error of each approximant over a grid of runs scored and allowed.
    ApproxGrid(GridArgs),
    /// Simulate one season from the exact formula and fit it.
    Simulate(SimulateArgs),
    /// Empirical coverage of the exponent's confidence interval.
    Coverage(CoverageArgs),
    /// SVG scatter plot of one season with the fitted line.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    PerGame,
    Total,
}

impl From<UnitArg> for Unit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::PerGame => Unit::PerGame,
            UnitArg::Total => Unit::Total,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Csv,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum InterceptArg {
    #[default]
    Free,
    Fixed,
}

impl From<InterceptArg> for InterceptMode {
    fn from(i: InterceptArg) -> Self {
        match i {
            InterceptArg::Free => InterceptMode::Free,
            InterceptArg::Fixed => InterceptMode::FixedAtHalf,
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("model").required(true).args(["gamma", "beta"])))]
struct PredictArgs {
    #[arg(long, allow_hyphen_values = true)]
    rs: f64,
    #[arg(long, allow_hyphen_values = true)]
    ra: f64,
    /// Pythagorean exponent.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Slope of the linear model.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// League average; with --gamma, adds the Taylor approximants.
    #[arg(long, allow_hyphen_values = true)]
    r_ave: Option<f64>,
    #[arg(long, value_enum, default_value = "per-game")]
    unit: UnitArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct EstimationArgs {
    /// Standings CSV, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    /// Family-wise confidence level.
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    /// Bonferroni family size: a positive integer, or `seasons` for the
    /// number of seasons in the input.
    #[arg(long, default_value = "1")]
    m: String,
    #[arg(long, value_enum, default_value = "free")]
    intercept: InterceptArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    est: EstimationArgs,
    #[arg(long)]
    season: i32,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    est: EstimationArgs,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    r_ave: f64,
    #[arg(long)]
    rs_min: f64,
    #[arg(long)]
    rs_max: f64,
    #[arg(long, default_value_t = 1.0)]
    rs_step: f64,
    #[arg(long)]
    ra_min: f64,
    #[arg(long)]
    ra_max: f64,
    #[arg(long, default_value_t = 1.0)]
    ra_step: f64,
    /// Also evaluate the linear model with this slope.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value = "per-game")]
    unit: UnitArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value_t = 30)]
    teams: usize,
    #[arg(long, default_value_t = 162)]
    games: u32,
    /// True exponent.
    #[arg(long, default_value_t = 1.82, allow_hyphen_values = true)]
    gamma: f64,
    /// League average, in --unit.
    #[arg(long, default_value_t = 4.5, allow_hyphen_values = true)]
    r_ave: f64,
    /// Standard deviation of team run rates, in --unit.
    #[arg(long, default_value_t = 0.35, allow_hyphen_values = true)]
    spread: f64,
    /// Skip the shift that makes league scoring and allowing averages equal.
    #[arg(long)]
    no_balance: bool,
    #[arg(long, env = "PYTHAG_SEED")]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "per-game")]
    unit: UnitArg,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    sim: SimArgs,
    /// Number of seasons to simulate.
    #[arg(long, default_value_t = 1)]
    runs: u64,
    /// Write the first simulated season's standings to this CSV file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoverageArgs {
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long, default_value_t = 2000)]
    runs: u64,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    season: i32,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "free")]
    intercept: InterceptArg,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CliResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Predict(a) => predict(a),
        Command::Fit(a) => fit(a),
        Command::Table(a) => table(a),
        Command::ApproxGrid(a) => grid(a),
        Command::Simulate(a) => simulate(a),
        Command::Coverage(a) => coverage(a),
        Command::Plot(a) => plot(a),
    };
    match out {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn render_pairs(rows: &[(String, String)], head: (&str, &str), format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            writeln!(s, "{},{}", head.0, head.1).unwrap();
            for (k, v) in rows {
                writeln!(s, "{k},{v}").unwrap();
            }
        }
        Format::Markdown => {
            writeln!(s, "| {} | {} |\n|---|---:|", head.0, head.1).unwrap();
            for (k, v) in rows {
                writeln!(s, "| {k} | {v} |").unwrap();
            }
        }
    }
    s
}

fn predict(a: PredictArgs) -> CliResult {
    let unit: Unit = a.unit.into();
    let rs = RunRate::new(a.rs, unit)?;
    let ra = RunRate::new(a.ra, unit)?;
    let mut rows = Vec::new();
    let mut push = |name: &str, wp: WinPct| rows.push((name.to_string(), format!("{:.6}", wp.value())));
    if let Some(g) = a.gamma {
        let gamma = Exponent::new(g)?;
        push("exact", pythagorean_wp(rs, ra, gamma)?);
        if let Some(r) = a.r_ave {
            let r_ave = LeagueAverage::new(r, unit)?;
            push("taylor1", taylor1_wp(rs, ra, gamma, r_ave)?);
            push("taylor2", taylor2_wp(rs, ra, gamma, r_ave)?);
        }
        push("appendix_log", appendix_log_form(rs, ra, gamma)?);
        push("appendix_ratio", appendix_ratio_form(rs, ra, gamma)?);
    } else if let Some(b) = a.beta {
        let beta = Slope::new(b, unit)?;
        push("linear", linear_wp(rs, ra, beta)?);
        if let Some(r) = a.r_ave {
            let implied = gamma_from_beta(beta, LeagueAverage::new(r, unit)?)?;
            push("exact_implied_gamma", pythagorean_wp(rs, ra, implied)?);
        }
    }
    Ok(render_pairs(&rows, ("model", "wp"), a.format.into()))
}

fn read_records(path: &Path) -> Result<Vec<TeamSeason>, Failure> {
    let records = if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().lock().read_to_end(&mut buf)?;
        parse_standings(buf.as_slice())?
    } else {
        let file = File::open(path)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        parse_standings(file)?
    };
    Ok(records)
}

fn check_level(level: f64) -> Result<(), Failure> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--level must be in (0, 1), got {level}")))
    }
}

fn m_policy(raw: &str) -> Result<MPolicy, Failure> {
    match raw {
        "seasons" => Ok(MPolicy::SeasonCount),
        "1" => Ok(MPolicy::Unadjusted),
        n => match n.parse::<u32>() {
            Ok(m) if m >= 1 => Ok(MPolicy::Fixed(m)),
            _ => Err(Failure::Usage(format!(
                "--m must be a positive integer or `seasons`, got {n:?}"
            ))),
        },
    }
}

fn fit(a: FitArgs) -> CliResult {
    check_level(a.est.level)?;
    let policy = m_policy(&a.est.m)?;
    let records = read_records(&a.est.input)?;
    let n_seasons = pythag_core::ingest::seasons(&records).len();
    let m = policy.resolve(n_seasons);
    let ds = build_season_dataset(&records, a.season)?;
    let sf = fit_dataset(&ds, a.est.intercept.into(), a.est.level, m)?;
    let (f, g) = (&sf.fit, &sf.gamma);
    let rows: Vec<(String, String)> = vec![
        ("season".into(), a.season.to_string()),
        ("teams".into(), f.n.to_string()),
        ("df".into(), f.df.to_string()),
        ("alpha".into(), format!("{:.6}", f.alpha_hat)),
        ("beta".into(), format!("{:.6}", f.beta_hat)),
        ("se_beta".into(), format!("{:.6}", f.se_beta)),
        ("t_beta".into(), format!("{:.4}", f.t_statistic())),
        ("p_value_beta".into(), format!("{:.3e}", f.beta_p_value())),
        ("r_ave".into(), format!("{:.6}", g.r_ave_used.value())),
        ("gamma".into(), format!("{:.6}", g.gamma_hat)),
        ("gamma_low".into(), format!("{:.6}", g.ci_low)),
        ("gamma_high".into(), format!("{:.6}", g.ci_high)),
        ("r_squared".into(), format!("{:.6}", f.r_squared)),
        ("level".into(), a.est.level.to_string()),
        ("m".into(), m.to_string()),
        (
            "per_interval_alpha".into(),
            format!("{:.6}", bonferroni_alpha(a.est.level, m)),
        ),
    ];
    Ok(render_pairs(&rows, ("field", "value"), a.est.format.into()))
}

fn table(a: TableArgs) -> CliResult {
    check_level(a.est.level)?;
    let policy = m_policy(&a.est.m)?;
    let records = read_records(&a.est.input)?;
    let mut datasets = Vec::new();
    let mut failed = Vec::new();
    for (season, ds) in split_seasons(&records) {
        match ds {
            Ok(ds) => datasets.push(ds),
            Err(e) => failed.push(SeasonRow {
                season,
                result: Err(e),
            }),
        }
    }
    let m = policy.resolve(datasets.len() + failed.len());
    let mut rows = fit_all_seasons(&datasets, a.est.intercept.into(), a.est.level, MPolicy::Fixed(m));
    rows.extend(failed);
    rows.sort_by_key(|r| r.season);

    let text = render_table(
        &rows,
        TableOptions {
            format: a.est.format.into(),
            level: a.est.level,
            m,
        },
    );
    let errors: Vec<String> = rows
        .iter()
        .filter_map(|r| r.result.as_ref().err().map(|e| format!("season {}: {e}", r.season)))
        .collect();
    if errors.is_empty() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Data(errors.join("; ")))
    }
}

fn grid(a: GridArgs) -> CliResult {
    let unit: Unit = a.unit.into();
    let rs = GridAxis::new(a.rs_min, a.rs_max, a.rs_step)?;
    let ra = GridAxis::new(a.ra_min, a.ra_max, a.ra_step)?;
    let beta = a.beta.map(|b| Slope::new(b, unit)).transpose()?;
    let report = approx_grid(
        Exponent::new(a.gamma)?,
        LeagueAverage::new(a.r_ave, unit)?,
        rs,
        ra,
        beta,
    )?;
    Ok(report.render(a.format.into()))
}

fn sim_config(a: &SimArgs) -> Result<SimConfig, Failure> {
    let usage = |e: Error| Failure::Usage(e.to_string());
    check_level(a.level)?;
    let unit: Unit = a.unit.into();
    let games = f64::from(a.games.max(1));
    let (r_ave, spread) = match unit {
        Unit::PerGame => (a.r_ave, a.spread),
        Unit::Total => (a.r_ave / games, a.spread / games),
    };
    let cfg = SimConfig {
        n_teams: a.teams,
        games: a.games,
        true_gamma: Exponent::new(a.gamma).map_err(usage)?,
        r_ave: LeagueAverage::per_game(r_ave).map_err(usage)?,
        spread,
        balance: !a.no_balance,
        seed: a.seed.unwrap_or(DEFAULT_SEED),
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn config_echo(cfg: &SimConfig) -> Vec<(String, String)> {
    vec![
        ("rng".into(), "ChaCha8Rng seed_from_u64 (run i: seed xor i)".into()),
        ("seed".into(), cfg.seed.to_string()),
        ("teams".into(), cfg.n_teams.to_string()),
        ("games".into(), cfg.games.to_string()),
        ("true_gamma".into(), cfg.true_gamma.value().to_string()),
        ("r_ave_per_game".into(), cfg.r_ave.value().to_string()),
        ("spread_per_game".into(), cfg.spread.to_string()),
        ("balance".into(), cfg.balance.to_string()),
    ]
}

fn simulate(a: SimulateArgs) -> CliResult {
    let cfg = sim_config(&a.sim)?;
    if a.runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let mut rows = config_echo(&cfg);
    rows.push(("runs".into(), a.runs.to_string()));
    if let Some(path) = &a.output {
        let ds = simulate_season(&cfg)?;
        let file = File::create(path)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        write_standings(&ds.records, file)?;
    }
    let est = gamma_sweep(&cfg, a.runs, a.sim.level)?;
    if let [g] = est.as_slice() {
        rows.push(("gamma_hat".into(), format!("{:.6}", g.gamma_hat)));
        rows.push(("gamma_low".into(), format!("{:.6}", g.ci_low)));
        rows.push(("gamma_high".into(), format!("{:.6}", g.ci_high)));
        rows.push(("r_ave_fitted".into(), format!("{:.6}", g.r_ave_used.value())));
    } else {
        let n = est.len() as f64;
        let mean = est.iter().map(|g| g.gamma_hat).sum::<f64>() / n;
        let sd = (est.iter().map(|g| (g.gamma_hat - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        let mae = est
            .iter()
            .map(|g| (g.gamma_hat - cfg.true_gamma.value()).abs())
            .sum::<f64>()
            / n;
        rows.push(("gamma_hat_mean".into(), format!("{mean:.6}")));
        rows.push(("gamma_hat_sd".into(), format!("{sd:.6}")));
        rows.push(("mean_abs_error".into(), format!("{mae:.6}")));
    }
    Ok(render_pairs(&rows, ("field", "value"), Format::Csv))
}

fn coverage(a: CoverageArgs) -> CliResult {
    let cfg = sim_config(&a.sim)?;
    if a.runs < 100 {
        return Err(Failure::Usage(format!(
            "--runs must be at least 100, got {}",
            a.runs
        )));
    }
    let cov = coverage_experiment(&cfg, a.runs, a.sim.level)?;
    let mut rows = config_echo(&cfg);
    rows.push(("runs".into(), cov.runs.to_string()));
    rows.push(("level".into(), cov.level.to_string()));
    rows.push(("covered".into(), cov.covered.to_string()));
    rows.push(("coverage".into(), format!("{:.6}", cov.fraction())));
    Ok(render_pairs(&rows, ("field", "value"), Format::Csv))
}

fn plot(a: PlotArgs) -> CliResult {
    let records = read_records(&a.input)?;
    let ds = build_season_dataset(&records, a.season)?;
    let svg = plot_season(&ds, a.intercept.into())?;
    std::fs::write(&a.output, svg)
        .map_err(|e| Failure::Data(format!("{}: {e}", a.output.display())))?;
    Ok(format!("wrote {}\n", a.output.display()))
}
