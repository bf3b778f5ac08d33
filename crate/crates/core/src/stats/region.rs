use nalgebra::{Cholesky, DVector};
use serde::Serialize;

use crate::dgp::{Marginal, DEFAULT_SUPPORT_FLOOR};
use crate::error::{Error, Result};
use crate::stats::covariance::{multinomial_covariance, CovMatrix, MAX_MATRIX_DIM};
use crate::stats::quantile::{chi_square_quantile, normal_upper_quantile};
use crate::stats::wilson::wilson_with_z;

/// `x^T M^{-1} x` through a Cholesky factorization of `M`.
pub fn inverse_quadratic_form(m: &CovMatrix, x: &[f64]) -> Result<f64> {
    if m.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: x.len(),
        });
    }
    if m.dim() > MAX_MATRIX_DIM {
        return Err(Error::InvalidParameter(format!(
            "matrix dimension {} above {MAX_MATRIX_DIM}",
            m.dim()
        )));
    }
    let chol = Cholesky::new(m.matrix().clone()).ok_or(Error::SingularCovariance)?;
    let v = DVector::from_column_slice(x);
    let y = chol.solve(&v);
    let q = v.dot(&y);
    if !q.is_finite() {
        return Err(Error::SingularCovariance);
    }
    Ok(q)
}

/// The ellipsoid `{x : (x - center)^T shape^{-1} (x - center) <= threshold}` in
/// reduced coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct EllipsoidRegion {
    pub center: Vec<f64>,
    pub shape: CovMatrix,
    pub threshold: f64,
}

impl EllipsoidRegion {
    /// Acceptance region for the empirical distribution of `n` i.i.d. draws from `pbar`.
    pub fn iid(pbar: &Marginal, n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let p = pbar.floored(DEFAULT_SUPPORT_FLOOR);
        let threshold = chi_square_quantile(p.d() - 1, alpha)? / n as f64;
        Ok(Self {
            center: p.reduced().to_vec(),
            shape: multinomial_covariance(&p),
            threshold,
        })
    }

    pub fn statistic(&self, x: &[f64]) -> Result<f64> {
        let diff: Vec<f64> = x.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        inverse_quadratic_form(&self.shape, &diff)
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        Ok(self.statistic(x)? <= self.threshold)
    }
}

/// `N (phi - pbar)^T Sigma^{-1} (phi - pbar)` with `Sigma` the one-draw covariance
/// at `pbar` (floored), over the first `d-1` outcomes.
pub fn acceptance_statistic(phi: &Marginal, pbar: &Marginal, n: usize) -> Result<f64> {
    if phi.d() != pbar.d() {
        return Err(Error::DimensionMismatch {
            expected: pbar.d(),
            got: phi.d(),
        });
    }
    let p = pbar.floored(DEFAULT_SUPPORT_FLOOR);
    let diff: Vec<f64> = phi
        .reduced()
        .iter()
        .zip(p.reduced())
        .map(|(a, b)| a - b)
        .collect();
    Ok(n as f64 * inverse_quadratic_form(&multinomial_covariance(&p), &diff)?)
}

/// Does the i.i.d. test at `pbar` accept data with empirical distribution `phi`?
pub fn acceptance_test(phi: &Marginal, pbar: &Marginal, n: usize, alpha: f64) -> Result<bool> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    Ok(acceptance_statistic(phi, pbar, n)? <= chi_square_quantile(pbar.d() - 1, alpha)?)
}

/// Per-outcome score intervals at level `1 - alpha/(d-1)` for outcomes `0..d-1`.
pub fn bonferroni_intervals(phi: &Marginal, n: usize, alpha: f64) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let k = (phi.d() - 1) as f64;
    let z = normal_upper_quantile(alpha / (2.0 * k))?;
    Ok(phi
        .reduced()
        .iter()
        .map(|&f| wilson_with_z(f, n, z))
        .collect())
}

/// Bonferroni acceptance: every reduced component of `pbar` lies in its interval.
pub fn bonferroni_test(phi: &Marginal, pbar: &Marginal, n: usize, alpha: f64) -> Result<bool> {
    if phi.d() != pbar.d() {
        return Err(Error::DimensionMismatch {
            expected: pbar.d(),
            got: phi.d(),
        });
    }
    let iv = bonferroni_intervals(phi, n, alpha)?;
    Ok(pbar
        .reduced()
        .iter()
        .zip(&iv)
        .all(|(&p, &(lo, hi))| p >= lo - 1e-12 && p <= hi + 1e-12))
}
