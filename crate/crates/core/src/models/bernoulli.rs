use serde::Serialize;

use crate::dgp::{BoxFamily, DgpFamily, MarginalBox, SampleData};
use crate::error::{Error, Result};
use crate::models::Interval;
use crate::stats::wilson_interval;

/// Outcome 1 has probability `(1 - delta) theta + delta psi_i`, with the
/// nuisance `psi_i` in `[0, 1]` free at every experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernoulliNuisanceModel {
    pub delta: f64,
    /// Optional discretization of the structural parameter for enumeration checks.
    pub theta_grid: Option<Vec<f64>>,
}

impl BernoulliNuisanceModel {
    pub fn new(delta: f64) -> Result<Self> {
        check_prob("delta", delta)?;
        Ok(Self {
            delta,
            theta_grid: None,
        })
    }

    /// Range of the per-experiment probability of outcome 1 at `theta`.
    pub fn marginal_range(&self, theta: f64) -> (f64, f64) {
        let base = (1.0 - self.delta) * theta;
        (base, base + self.delta)
    }

    /// Processes compatible with `theta`: every marginal in the range above.
    pub fn family(&self, theta: f64) -> Result<BoxFamily> {
        let (a, b) = self.marginal_range(theta);
        Ok(BoxFamily::stationary(MarginalBox::bernoulli(
            a,
            b.min(1.0),
        )?))
    }

    /// Union of the families over `theta_grid` (or the given thetas).
    pub fn union_family(&self, thetas: &[f64]) -> Result<DgpFamily> {
        DgpFamily::union(
            thetas
                .iter()
                .map(|&t| self.family(t).map(DgpFamily::Box))
                .collect::<Result<_>>()?,
        )
    }
}

fn check_prob(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {x} is not in [0, 1]"
        )))
    }
}

/// Structural parameters consistent with long-run frequency `phi1`.
pub fn bern_theta_asymptotic(phi1: f64, delta: f64) -> Result<Interval> {
    check_prob("phi1", phi1)?;
    check_prob("delta", delta)?;
    if delta == 1.0 {
        return Err(Error::DeltaOne);
    }
    Ok(Interval::closed(
        ((phi1 - delta) / (1.0 - delta)).max(0.0),
        (phi1 / (1.0 - delta)).min(1.0),
    ))
}

/// Next-experiment predictions under average-then-update: the frequency widened by `delta`.
pub fn bern_prediction_asymptotic(phi1: f64, delta: f64) -> Result<Interval> {
    check_prob("phi1", phi1)?;
    check_prob("delta", delta)?;
    Ok(Interval::closed(
        (phi1 - delta).max(0.0),
        (phi1 + delta).min(1.0),
    ))
}

/// Next-experiment predictions under maximum likelihood updating.
///
/// The likelihood peaks where the nuisance sits at 1 on observed ones and at 0
/// on zeros, so `(1 - delta) theta` maximizes `phi ln(t + delta) + (1 - phi) ln(1 - t)`
/// at `t = phi - (1 - phi) delta`. That `t` is clamped to `[0, 1 - delta]`
/// before the free next nuisance spreads it to `[t, t + delta]`; in the interior
/// this is `[phi - (1 - phi) delta, phi + phi delta]`.
pub fn bern_prediction_ml(phi1: f64, delta: f64) -> Result<Interval> {
    check_prob("phi1", phi1)?;
    check_prob("delta", delta)?;
    let t = (phi1 - (1.0 - phi1) * delta).clamp(0.0, 1.0 - delta);
    Ok(Interval::closed(t, (t + delta).min(1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteSets {
    pub wilson: Interval,
    pub theta: Interval,
    pub prediction: Interval,
}

/// Finite-sample sets from the Wilson interval of the observed frequency of 1.
pub fn bern_theta_finite(data: &SampleData, delta: f64, alpha: f64) -> Result<FiniteSets> {
    if data.is_empty() {
        return Err(Error::EmptySample);
    }
    check_prob("delta", delta)?;
    if delta == 1.0 {
        return Err(Error::DeltaOne);
    }
    let n = data.len();
    let phi1 = data.counts(2)[1] as f64 / n as f64;
    let (wl, wu) = wilson_interval(phi1, n, alpha)?;
    Ok(FiniteSets {
        wilson: Interval::closed(wl, wu),
        theta: Interval::closed(
            ((wl - delta) / (1.0 - delta)).max(0.0),
            (wu / (1.0 - delta)).min(1.0),
        ),
        prediction: Interval::closed((wl - delta).max(0.0), (wu + delta).min(1.0)),
    })
}
