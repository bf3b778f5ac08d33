//! Covariances of outcome indicators, ellipsoidal and rectangular acceptance
//! regions, chi-square and normal quantiles, and the Wilson interval.

pub mod covariance;
pub mod quantile;
pub mod region;
pub mod special;
pub mod wilson;

pub use covariance::{
    average_covariance, gram_difference, multinomial_covariance, psd_check, CovMatrix, PSD_TOL,
};
pub use quantile::{
    chi_square_quantile, chi_square_upper_tail, normal_upper_quantile, normal_upper_tail,
};
pub use region::{
    acceptance_statistic, acceptance_test, bonferroni_intervals, bonferroni_test,
    inverse_quadratic_form, EllipsoidRegion,
};
pub use wilson::wilson_interval;
