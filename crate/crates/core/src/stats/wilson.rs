use crate::error::{Error, Result};
use crate::stats::quantile::normal_upper_quantile;

/// Score interval for a binomial proportion: the set of `p` with
/// `N (phi1 - p)^2 <= z^2 p (1 - p)`, `z = z_{alpha/2}`, in closed form.
pub fn wilson_interval(phi1: f64, n: usize, alpha: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if !(0.0..=1.0).contains(&phi1) {
        return Err(Error::InvalidParameter(format!(
            "frequency {phi1} outside [0, 1]"
        )));
    }
    let z = normal_upper_quantile(alpha / 2.0)?;
    Ok(wilson_with_z(phi1, n, z))
}

pub(crate) fn wilson_with_z(phi1: f64, n: usize, z: f64) -> (f64, f64) {
    let n = n as f64;
    let z2 = z * z;
    let center = (n * phi1 + z2 / 2.0) / (n + z2);
    let half = z / (n + z2) * (n * phi1 * (1.0 - phi1) + z2 / 4.0).sqrt();
    (
        (center - half).clamp(0.0, 1.0),
        (center + half).clamp(0.0, 1.0),
    )
}
