//! Student's t distribution via the regularized incomplete beta function.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7, n = 9).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 100_000;
    const EPS: f64 = 1e-16;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `0 ≤ x ≤ 1`.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b);
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Upper tail `P(T > t)` for `t ≥ 0`, computed without cancellation.
fn t_upper_tail(t: f64, df: f64) -> f64 {
    0.5 * regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5)
}

/// CDF of Student's t with `df` degrees of freedom.
pub fn t_cdf(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t == f64::INFINITY {
        return 1.0;
    }
    if t == f64::NEG_INFINITY {
        return 0.0;
    }
    if t >= 0.0 {
        1.0 - t_upper_tail(t, df)
    } else {
        t_upper_tail(-t, df)
    }
}

fn t_pdf(t: f64, df: f64) -> f64 {
    let ln = ln_gamma(0.5 * (df + 1.0))
        - ln_gamma(0.5 * df)
        - 0.5 * (df * std::f64::consts::PI).ln()
        - 0.5 * (df + 1.0) * (1.0 + t * t / df).ln();
    ln.exp()
}

/// Two-sided p-value `P(|T| ≥ |t|)`.
pub fn t_two_sided_p(t: f64, df: f64) -> f64 {
    if !t.is_finite() {
        return if t.is_nan() { f64::NAN } else { 0.0 };
    }
    2.0 * t_upper_tail(t.abs(), df)
}

/// The `p`-quantile of Student's t with `df` degrees of freedom.
///
/// Inverts [`t_cdf`] with safeguarded Newton steps inside a bracketing
/// interval. The search runs on the smaller tail so that `p` close to 1
/// does not lose precision.
pub fn t_quantile(p: f64, df: u64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("probability must be in (0, 1), got {p}")));
    }
    if df == 0 {
        return Err(Error::domain("degrees of freedom must be at least 1"));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let nu = df as f64;
    // solve P(T > t) = tail for t > 0, then restore the sign
    let (tail, sign) = if p > 0.5 { (1.0 - p, 1.0) } else { (p, -1.0) };

    let mut lo = 0.0;
    let mut hi = 1.0;
    while t_upper_tail(hi, nu) > tail {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            break;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let g = t_upper_tail(t, nu) - tail;
        if g > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        // d/dt of the upper tail is -pdf
        let step = g / t_pdf(t, nu);
        let mut next = t + step;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-14 * next.abs().max(1.0) || hi - lo <= 1e-15 * hi {
            t = next;
            break;
        }
        t = next;
    }
    Ok(sign * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!(ln_gamma(2.0).abs() < 1e-14);
        assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        // ln(9!) = ln 362880
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn incomplete_beta_closed_forms() {
        // I_x(1, 1) = x, I_x(a, 1) = x^a, I_x(1, b) = 1 - (1-x)^b
        for x in [0.1, 0.3, 0.5, 0.9] {
            assert!((regularized_incomplete_beta(x, 1.0, 1.0) - x).abs() < 1e-14);
            assert!((regularized_incomplete_beta(x, 3.0, 1.0) - x.powi(3)).abs() < 1e-14);
            let want = 1.0 - (1.0 - x).powf(2.5);
            assert!((regularized_incomplete_beta(x, 1.0, 2.5) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn cauchy_case() {
        // df = 1 is Cauchy: F(t) = 1/2 + atan(t)/pi
        for t in [-3.0, -0.5, 0.2, 1.0, 7.0] {
            let want = 0.5 + f64::atan(t) / std::f64::consts::PI;
            assert!((t_cdf(t, 1.0) - want).abs() < 1e-13);
        }
        assert!((t_quantile(0.75, 1).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(t_quantile(0.5, 7).unwrap(), 0.0);
        // 40-digit inversion of the incomplete-beta CDF
        assert!((t_quantile(0.975, 28).unwrap() - 2.048_407_141_795_245).abs() < 1e-9);
        assert!((t_quantile(0.975, 1_000_000).unwrap() - 1.959_966_356_814_107).abs() < 1e-8);
    }

    #[test]
    fn quantile_domain_errors() {
        assert!(t_quantile(0.0, 5).is_err());
        assert!(t_quantile(1.0, 5).is_err());
        assert!(t_quantile(f64::NAN, 5).is_err());
        assert!(t_quantile(0.9, 0).is_err());
    }

    #[test]
    fn p_value_matches_quantile() {
        let t = t_quantile(0.975, 28).unwrap();
        assert!((t_two_sided_p(t, 28.0) - 0.05).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn quantile_inverts_cdf(p in 1e-6f64..(1.0 - 1e-6), df in 1u64..500) {
            let t = t_quantile(p, df).unwrap();
            prop_assert!((t_cdf(t, df as f64) - p).abs() < 1e-10);
        }

        #[test]
        fn quantile_antisymmetric(p in 1e-6f64..0.5, df in 1u64..2000) {
            let lo = t_quantile(p, df).unwrap();
            let hi = t_quantile(1.0 - p, df).unwrap();
            prop_assert!((lo + hi).abs() <= 1e-9);
        }

        #[test]
        fn quantile_increasing(p in 0.01f64..0.98, dp in 1e-4f64..0.01, df in 1u64..200) {
            prop_assert!(t_quantile(p + dp, df).unwrap() > t_quantile(p, df).unwrap());
        }
    }
}
