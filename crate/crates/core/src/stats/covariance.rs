use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Serialize, Serializer};

use crate::dgp::{IndependentDgp, Marginal};
use crate::error::Result;

/// Tolerance below zero still accepted as a nonnegative eigenvalue.
pub const PSD_TOL: f64 = 1e-10;

/// Largest matrix dimension handled by the quadratic-form routines.
pub const MAX_MATRIX_DIM: usize = 16;

/// Symmetric `(d-1) x (d-1)` covariance of the reduced outcome indicator vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix(DMatrix<f64>);

impl CovMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n),
            "covariance must be square"
        );
        Self(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.0.row(i).iter().copied().collect())
            .collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| (self.0[(i, j)] - self.0[(j, i)]).abs() <= tol))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.dim() == 0 {
            return f64::INFINITY;
        }
        SymmetricEigen::new(self.0.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub(crate) fn add_scaled(&mut self, other: &CovMatrix, w: f64) {
        self.0 += &other.0 * w;
    }

    pub(crate) fn sub(&self, other: &CovMatrix) -> CovMatrix {
        CovMatrix(&self.0 - &other.0)
    }
}

impl Serialize for CovMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Covariance of one multinomial draw: `p_k (1 - p_k)` on the diagonal and
/// `-p_k p_l` off it, over the first `d-1` outcomes.
pub fn multinomial_covariance(p: &Marginal) -> CovMatrix {
    let q = p.reduced();
    let n = q.len();
    CovMatrix(DMatrix::from_fn(n, n, |k, l| {
        if k == l {
            q[k] * (1.0 - q[k])
        } else {
            -q[k] * q[l]
        }
    }))
}

/// Mean of the per-experiment covariances over experiments `1..=n`.
pub fn average_covariance(p: &IndependentDgp, n: usize) -> Result<CovMatrix> {
    if n == 0 {
        return Err(crate::Error::InvalidParameter(
            "average over zero experiments".into(),
        ));
    }
    let mut acc = CovMatrix::zeros(p.d() - 1);
    for (m, w) in p.class_counts(n) {
        acc.add_scaled(&multinomial_covariance(m), w as f64 / n as f64);
    }
    Ok(acc)
}

/// Covariance of the i.i.d. process at the average marginal minus the average
/// covariance of the process. Always positive semidefinite.
pub fn gram_difference(p: &IndependentDgp, n: usize) -> Result<CovMatrix> {
    let pooled = multinomial_covariance(&p.average_sample_marginals(n)?);
    Ok(pooled.sub(&average_covariance(p, n)?))
}

/// Minimum eigenvalue at least `-PSD_TOL`.
pub fn psd_check(m: &CovMatrix) -> bool {
    debug_assert!(m.is_symmetric(1e-12));
    m.min_eigenvalue() >= -PSD_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_covariance() {
        let c = multinomial_covariance(&Marginal::new(vec![0.6, 0.4]).unwrap());
        assert_eq!(c.dim(), 1);
        assert!((c.get(0, 0) - 0.24).abs() < 1e-15);
    }

    #[test]
    fn degenerate_covariance_is_zero() {
        assert_eq!(
            multinomial_covariance(&Marginal::point(4, 0)).max_abs_entry(),
            0.0
        );
    }

    #[test]
    fn uniform_three_outcomes() {
        let c = multinomial_covariance(&Marginal::uniform(3));
        let want = [[2.0 / 9.0, -1.0 / 9.0], [-1.0 / 9.0, 2.0 / 9.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((c.get(i, j) - want[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn average_covariance_examples() {
        let iid = IndependentDgp::iid(Marginal::new(vec![0.2, 0.3, 0.5]).unwrap());
        let a = average_covariance(&iid, 17).unwrap();
        let b = multinomial_covariance(&Marginal::new(vec![0.2, 0.3, 0.5]).unwrap());
        assert!(a.sub(&b).max_abs_entry() < 1e-15);

        let alt = IndependentDgp::bernoulli_periodic(&[0.6, 1.0]).unwrap();
        assert!((average_covariance(&alt, 2).unwrap().get(0, 0) - 0.12).abs() < 1e-15);

        let per = IndependentDgp::bernoulli_periodic(&[0.2, 0.8]).unwrap();
        assert!((average_covariance(&per, 2).unwrap().get(0, 0) - 0.16).abs() < 1e-15);
    }

    #[test]
    fn gram_difference_examples() {
        let iid = IndependentDgp::iid(Marginal::uniform(4));
        assert!(gram_difference(&iid, 9).unwrap().max_abs_entry() < 1e-15);
        let alt = IndependentDgp::bernoulli_periodic(&[0.6, 1.0]).unwrap();
        assert!((gram_difference(&alt, 2).unwrap().get(0, 0) - 0.04).abs() < 1e-15);
    }

    #[test]
    fn psd_examples() {
        assert!(psd_check(&CovMatrix::zeros(3)));
        assert!(!psd_check(&CovMatrix::from_rows(&[
            vec![1.0, 2.0],
            vec![2.0, 1.0]
        ])));
    }

    #[test]
    fn serializes_row_major() {
        let c = CovMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 5.0]]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[[1.0,2.0],[2.0,5.0]]");
    }
}
