use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::stats::special::{erfc, gamma_q};

/// Absolute tolerance of the bisection quantiles.
pub const QUANTILE_TOL: f64 = 1e-10;

fn check_level(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "level {alpha} outside (0, 1)"
        )))
    }
}

/// `P(X > x)` for `X ~ chi-square(df)`.
pub fn chi_square_upper_tail(x: f64, df: usize) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        gamma_q(df as f64 / 2.0, x / 2.0)
    }
}

/// `P(Z > z)` for a standard normal `Z`.
pub fn normal_upper_tail(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

// Bisection for a decreasing tail function.
fn bisect_decreasing(tail: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > QUANTILE_TOL {
        let mid = 0.5 * (lo + hi);
        if tail(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Upper `alpha` quantile of the chi-square distribution with `df` degrees of freedom.
pub fn chi_square_quantile(df: usize, alpha: f64) -> Result<f64> {
    if df == 0 {
        return Err(Error::InvalidParameter("chi-square needs df >= 1".into()));
    }
    check_level(alpha)?;
    let mut hi = df as f64 + 10.0;
    while chi_square_upper_tail(hi, df) > alpha {
        hi *= 2.0;
    }
    Ok(bisect_decreasing(
        |x| chi_square_upper_tail(x, df),
        alpha,
        0.0,
        hi,
    ))
}

/// Upper `alpha` quantile `z_alpha` of the standard normal.
pub fn normal_upper_quantile(alpha: f64) -> Result<f64> {
    check_level(alpha)?;
    Ok(bisect_decreasing(normal_upper_tail, alpha, -40.0, 40.0))
}
