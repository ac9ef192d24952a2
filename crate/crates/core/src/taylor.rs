//! Multivariate Taylor expansions of `f(x, y) = x^γ / (x^γ + y^γ)` about the
//! diagonal point `(R_ave, R_ave)`.
//!
//! At `(a, a)`:
//!
//! * `f = 1/2`
//! * `f_x = γ/(4a)`, `f_y = −γ/(4a)`
//! * `f_xx = −γ/(4a²)`, `f_yy = γ/(4a²)`, `f_xy = 0`
//!
//! The second-order values follow from `f(x, y) = 1 − f(y, x)`, which makes
//! `f_yy(a, a) = −f_xx(a, a)`, and from `f_xy ∝ x^γ + y^γ − 2y^γ`, which
//! vanishes on the diagonal. They are checked against central finite
//! differences in the tests below.

use crate::error::Result;
use crate::formula::pow_pos;
use crate::units::{ensure_same_unit, Exponent, LeagueAverage, RunRate, WinPct};

/// Gradient and Hessian of `f` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

/// Closed-form partials of `f` at an arbitrary positive point.
pub fn partials_at(x: f64, y: f64, gamma: f64) -> Partials {
    let xg = pow_pos(x, gamma);
    let yg = pow_pos(y, gamma);
    let s = xg + yg;
    let s2 = s * s;
    let s3 = s2 * s;
    let fx = gamma * (xg / x) * yg / s2;
    let fy = -gamma * xg * (yg / y) / s2;
    let fxx = gamma * yg * (xg / (x * x)) * ((gamma - 1.0) * s - 2.0 * gamma * xg) / s3;
    let fyy = gamma * xg * (yg / (y * y)) * (2.0 * gamma * yg - (gamma - 1.0) * s) / s3;
    let fxy = gamma * gamma * (xg / x) * (yg / y) * (xg - yg) / s3;
    Partials {
        fx,
        fy,
        fxx,
        fxy,
        fyy,
    }
}

/// Partials at the expansion point `(a, a)`, in closed form.
pub fn partials_at_expansion(gamma: f64, a: f64) -> Partials {
    let first = gamma / (4.0 * a);
    let second = gamma / (4.0 * a * a);
    Partials {
        fx: first,
        fy: -first,
        fxx: -second,
        fxy: 0.0,
        fyy: second,
    }
}

fn offsets(rs: RunRate, ra: RunRate, r_ave: LeagueAverage) -> Result<(f64, f64)> {
    ensure_same_unit(rs.unit(), ra.unit())?;
    ensure_same_unit(r_ave.unit(), rs.unit())?;
    Ok((rs.value() - r_ave.value(), ra.value() - r_ave.value()))
}

/// Tangent-plane approximation `0.500 + (γ/4R_ave)(RS − RA)`.
pub fn taylor1_wp(
    rs: RunRate,
    ra: RunRate,
    gamma: Exponent,
    r_ave: LeagueAverage,
) -> Result<WinPct> {
    let (dx, dy) = offsets(rs, ra, r_ave)?;
    let p = partials_at_expansion(gamma.value(), r_ave.value());
    Ok(WinPct::approx(0.5 + p.fx * dx + p.fy * dy))
}

/// Second-order expansion about `(R_ave, R_ave)`.
///
/// Equals [`taylor1_wp`] minus `γ/(8R_ave²)·((RS−R_ave)² − (RA−R_ave)²)`,
/// so it coincides with the tangent plane whenever `RS + RA = 2R_ave`.
pub fn taylor2_wp(
    rs: RunRate,
    ra: RunRate,
    gamma: Exponent,
    r_ave: LeagueAverage,
) -> Result<WinPct> {
    let (dx, dy) = offsets(rs, ra, r_ave)?;
    let p = partials_at_expansion(gamma.value(), r_ave.value());
    let linear = p.fx * dx + p.fy * dy;
    let quadratic = 0.5 * p.fxx * dx * dx + p.fxy * dx * dy + 0.5 * p.fyy * dy * dy;
    Ok(WinPct::approx(0.5 + linear + quadratic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{pythag_raw, pythagorean_wp};

    // Central finite differences of f, independent of the closed forms.
    fn fd_partials(x: f64, y: f64, g: f64) -> Partials {
        let f = |x: f64, y: f64| pythag_raw(x, y, g);
        let h1 = 1e-5 * x.max(y);
        let h2 = 1e-4 * x.max(y);
        Partials {
            fx: (f(x + h1, y) - f(x - h1, y)) / (2.0 * h1),
            fy: (f(x, y + h1) - f(x, y - h1)) / (2.0 * h1),
            fxx: (f(x + h2, y) - 2.0 * f(x, y) + f(x - h2, y)) / (h2 * h2),
            fyy: (f(x, y + h2) - 2.0 * f(x, y) + f(x, y - h2)) / (h2 * h2),
            fxy: (f(x + h2, y + h2) - f(x + h2, y - h2) - f(x - h2, y + h2)
                + f(x - h2, y - h2))
                / (4.0 * h2 * h2),
        }
    }

    fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(a.abs()) + abs
    }

    #[test]
    fn expansion_partials_match_finite_differences() {
        for g in [1.0, 1.82, 2.0, 2.5] {
            for a in [0.7, 4.0, 4.5, 5.1] {
                let fd = fd_partials(a, a, g);
                let cf = partials_at_expansion(g, a);
                assert!(close(cf.fx, fd.fx, 1e-6, 0.0), "fx {g} {a}");
                assert!(close(cf.fy, fd.fy, 1e-6, 0.0), "fy {g} {a}");
                assert!(close(cf.fxx, fd.fxx, 1e-5, 0.0), "fxx {g} {a}");
                assert!(close(cf.fyy, fd.fyy, 1e-5, 0.0), "fyy {g} {a}");
                assert!(fd.fxy.abs() < 1e-6 * cf.fxx.abs(), "fxy {g} {a}");
            }
        }
    }

    #[test]
    fn general_partials_match_finite_differences() {
        for (x, y, g) in [(5.0, 4.0, 1.82), (3.2, 6.1, 2.0), (4.5, 4.5, 1.5), (800.0, 600.0, 1.81)] {
            let fd = fd_partials(x, y, g);
            let cf = partials_at(x, y, g);
            let scale = cf.fxx.abs().max(cf.fyy.abs());
            assert!(close(cf.fx, fd.fx, 1e-6, 0.0));
            assert!(close(cf.fy, fd.fy, 1e-6, 0.0));
            assert!(close(cf.fxx, fd.fxx, 1e-5, 1e-6 * scale));
            assert!(close(cf.fyy, fd.fyy, 1e-5, 1e-6 * scale));
            assert!(close(cf.fxy, fd.fxy, 1e-5, 1e-6 * scale));
        }
        let at = partials_at(4.5, 4.5, 1.82);
        let ex = partials_at_expansion(1.82, 4.5);
        assert!(close(at.fxx, ex.fxx, 1e-14, 0.0));
        assert!(close(at.fyy, ex.fyy, 1e-14, 0.0));
        assert_eq!(at.fxy, 0.0);
    }

    fn args(rs: f64, ra: f64) -> (RunRate, RunRate) {
        (RunRate::per_game(rs).unwrap(), RunRate::per_game(ra).unwrap())
    }

    #[test]
    fn taylor_examples() {
        let g = Exponent::new(1.82).unwrap();
        let r = LeagueAverage::per_game(4.5).unwrap();
        let (rs, ra) = args(4.5, 4.5);
        assert_eq!(taylor1_wp(rs, ra, g, r).unwrap().value(), 0.5);
        assert_eq!(taylor2_wp(rs, ra, g, r).unwrap().value(), 0.5);

        let (rs, ra) = args(5.0, 4.0);
        let t1 = taylor1_wp(rs, ra, g, r).unwrap().value();
        assert!((t1 - 0.601_111_111_111_111).abs() < 1e-12);
        // on the anti-diagonal the quadratic terms cancel
        let t2 = taylor2_wp(rs, ra, g, r).unwrap().value();
        assert!((t1 - t2).abs() < 1e-15);

        let (rs, ra) = args(5.2, 4.0);
        let exact = pythagorean_wp(rs, ra, g).unwrap().value();
        let e1 = (exact - taylor1_wp(rs, ra, g, r).unwrap().value()).abs();
        let e2 = (exact - taylor2_wp(rs, ra, g, r).unwrap().value()).abs();
        assert!(e2 < e1, "e1={e1} e2={e2}");
    }

    fn errors_along(g: f64, a: f64, dir: (f64, f64), d: f64) -> (f64, f64) {
        let gamma = Exponent::new(g).unwrap();
        let r = LeagueAverage::per_game(a).unwrap();
        let (rs, ra) = args(a + dir.0 * d, a + dir.1 * d);
        let exact = pythagorean_wp(rs, ra, gamma).unwrap().value();
        (
            (exact - taylor1_wp(rs, ra, gamma, r).unwrap().value()).abs(),
            (exact - taylor2_wp(rs, ra, gamma, r).unwrap().value()).abs(),
        )
    }

    #[test]
    fn remainder_orders_off_the_anti_diagonal() {
        for dir in [(1.0, 0.0), (0.0, 1.0), (1.0, 0.3)] {
            let (a1, a2) = errors_along(1.82, 4.5, dir, 0.01);
            let (b1, b2) = errors_along(1.82, 4.5, dir, 0.005);
            assert!((b1 / a1 - 0.25).abs() < 0.01, "{dir:?} e1 ratio {}", b1 / a1);
            assert!((b2 / a2 - 0.125).abs() < 0.01, "{dir:?} e2 ratio {}", b2 / a2);
        }
    }

    #[test]
    fn anti_diagonal_error_is_cubic() {
        // f(a + h, a − h) − 1/2 is odd in h, so the tangent plane is already
        // exact to second order along RS + RA = 2R_ave
        let (a1, a2) = errors_along(1.82, 4.5, (0.5, -0.5), 0.02);
        let (b1, b2) = errors_along(1.82, 4.5, (0.5, -0.5), 0.01);
        assert!((b1 / a1 - 0.125).abs() < 0.01, "{}", b1 / a1);
        assert!((a1 - a2).abs() < 1e-15 && (b1 - b2).abs() < 1e-15);
    }

    #[test]
    fn second_order_not_worse_near_expansion_point() {
        let a = 4.5;
        for i in -10..=10 {
            let d = 0.05 * a * f64::from(i) / 10.0;
            // anti-diagonal: equal errors
            let (e1, e2) = errors_along(1.82, a, (0.5, -0.5), d);
            assert!(e2 <= e1 + 1e-15);
            // along each axis the quadratic term is the leading error
            for dir in [(1.0, 0.0), (0.0, 1.0)] {
                let (e1, e2) = errors_along(1.82, a, dir, d);
                assert!(e2 <= e1 + 1e-15, "d={d} {dir:?}");
            }
        }
    }

    #[test]
    fn taylor1_is_linear_model_with_converted_slope() {
        use crate::formula::{beta_from_gamma, linear_wp};
        let g = Exponent::new(1.82).unwrap();
        let r = LeagueAverage::per_game(4.6).unwrap();
        let (rs, ra) = args(5.3, 3.9);
        let a = taylor1_wp(rs, ra, g, r).unwrap().value();
        let b = linear_wp(rs, ra, beta_from_gamma(g, r)).unwrap().value();
        assert!((a - b).abs() < 1e-15);
    }
}
