//! Outcome spaces, marginals, independent processes and families of them.

pub mod family;
pub mod json;
pub mod marginal;
pub mod outcome;
pub mod process;
pub(crate) mod reach;
pub mod sample;

pub use family::{
    family_contains, BoxFamily, DgpFamily, MarginalBox, SampleConstraint, MEMBERSHIP_TOL,
};
pub use marginal::{Marginal, DEFAULT_SUPPORT_FLOOR, SIMPLEX_TOL};
pub use outcome::OutcomeSpace;
pub use process::{product_measure, IndependentDgp, Tail};
pub use sample::{
    draw_outcome, empirical_distribution, sample, sample_with, stream_rng, SampleData,
};
