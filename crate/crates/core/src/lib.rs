//! Robust decisions with sets of independent, possibly non-identical data-generating
//! processes: maxmin expected utility, updating rules that do or do not accommodate
//! the truth, the confidence-region statistics behind them, two applied models and
//! a seeded Monte Carlo harness.

pub mod decision;
pub mod dgp;
pub mod error;
pub mod lp;
pub mod models;
pub mod sim;
pub mod stats;
pub mod update;

pub use error::{Error, Result};
