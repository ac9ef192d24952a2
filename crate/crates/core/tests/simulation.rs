use pythag_core::simulate::gamma_sweep;
use pythag_core::*;

fn cfg(games: u32, spread: f64, seed: u64) -> SimConfig {
    SimConfig {
        n_teams: 30,
        games,
        true_gamma: Exponent::new(1.82).unwrap(),
        r_ave: LeagueAverage::per_game(4.5).unwrap(),
        spread,
        balance: true,
        seed,
    }
}

#[test]
fn higher_level_covers_at_least_as_often() {
    let c = cfg(162, 0.35, 2024);
    let c95 = coverage_experiment(&c, 500, 0.95).unwrap();
    let c99 = coverage_experiment(&c, 500, 0.99).unwrap();
    assert!(c99.covered >= c95.covered);
}

#[test]
fn coverage_is_reproducible() {
    let c = cfg(162, 0.35, 31);
    assert_eq!(
        coverage_experiment(&c, 200, 0.95).unwrap(),
        coverage_experiment(&c, 200, 0.95).unwrap()
    );
}

#[test]
fn runs_use_xor_seeds() {
    let c = cfg(162, 0.35, 0xdead_beef);
    let sweep = gamma_sweep(&c, 5, 0.95).unwrap();
    for (i, g) in sweep.iter().enumerate() {
        let ds = simulate_season(&c.with_seed(0xdead_beef ^ i as u64)).unwrap();
        let direct = fit_dataset(&ds, InterceptMode::Free, 0.95, 1).unwrap();
        assert_eq!(direct.gamma, *g);
    }
}

/// Away from the expansion point the linear fit drifts from the true
/// exponent. Games are large so binomial noise does not mask the effect.
#[test]
fn misspecification_grows_with_spread() {
    let mean_abs_error = |spread: f64| {
        let est = gamma_sweep(&cfg(1_000_000, spread, 500), 500, 0.95).unwrap();
        est.iter().map(|g| (g.gamma_hat - 1.82).abs()).sum::<f64>() / est.len() as f64
    };
    let e: Vec<f64> = [0.1, 0.35, 0.7].into_iter().map(mean_abs_error).collect();
    assert!(e[0] <= e[1] && e[1] <= e[2], "{e:?}");
}

#[test]
fn unbalanced_league_still_fits() {
    let mut c = cfg(162, 0.35, 77);
    c.balance = false;
    let ds = simulate_season(&c).unwrap();
    assert!(fit_dataset(&ds, InterceptMode::Free, 0.95, 1).is_ok());
}
