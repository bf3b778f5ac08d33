use serde::Serialize;

use crate::decision::act::{Act, DecisionProblem};
use crate::decision::hull::{future_hull, MarginalHull, DEFAULT_HULL_CAP};
use crate::dgp::{DgpFamily, IndependentDgp, MarginalBox, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::lp::{in_convex_hull, max_separation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    /// The question could not be settled (e.g. the membership LP did not solve).
    Unknown,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// Is the truth's joint marginal over experiments `n+1..=n+k` in the updated hull?
///
/// For a rectangular hull the answer is exact at every horizon: the hull's
/// marginal on each experiment is that experiment's box, so a product measure
/// with some marginal outside its box cannot be in the hull, and one with every
/// marginal inside is itself a product of box points.
pub fn accommodates(
    updated: &DgpFamily,
    pstar: &IndependentDgp,
    n: usize,
    k: usize,
) -> Result<Verdict> {
    if updated.is_empty() {
        return Ok(Verdict::No);
    }
    match future_hull(updated, n, k)? {
        MarginalHull::Rect { boxes } => Ok(boxes_hold(&boxes, pstar, n).into()),
        MarginalHull::Points { points, .. } => {
            match in_convex_hull(&points, &pstar.joint_future(n, k)) {
                Ok(b) => Ok(b.into()),
                Err(Error::Lp(_)) => Ok(Verdict::Unknown),
                Err(e) => Err(e),
            }
        }
    }
}

fn boxes_hold(boxes: &[MarginalBox], pstar: &IndependentDgp, n: usize) -> bool {
    boxes
        .iter()
        .enumerate()
        .all(|(j, b)| b.contains(pstar.marginal_at(n + 1 + j), MEMBERSHIP_TOL))
}

/// Is the updated hull a strict subset of the initial hull?
pub fn refines(updated: &DgpFamily, initial: &DgpFamily, n: usize, k: usize) -> Result<bool> {
    let init = future_hull(initial, n, k)?.points(DEFAULT_HULL_CAP)?;
    if updated.is_empty() {
        return Ok(true);
    }
    let upd = future_hull(updated, n, k)?.points(DEFAULT_HULL_CAP)?;
    for p in &upd {
        if !in_convex_hull(&init, p)? {
            return Ok(false);
        }
    }
    for p in &init {
        if !in_convex_hull(&upd, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A basic problem on which the data-driven choice is objectively worse than the
/// data-free one, for a truth outside the updated hull at `K = 1`.
///
/// The act maximizes the margin by which its worst case over the updated hull
/// exceeds its expectation under the truth; the constant sits halfway between.
/// The data-driven choice then takes the act and earns its expectation under
/// the truth, while the data-free choice (whose hull contains the truth) takes
/// the constant. Returns `None` when the truth is inside the updated hull.
pub fn separating_basic_problem(
    updated: &MarginalHull,
    pstar: &IndependentDgp,
    n: usize,
) -> Result<Option<DecisionProblem>> {
    if updated.horizon() != 1 {
        return Err(Error::InvalidParameter(
            "separation is built for one-step acts".into(),
        ));
    }
    let target = pstar.marginal_at(n + 1).probs().to_vec();
    let points = updated.points(DEFAULT_HULL_CAP)?;
    let (gap, f) = max_separation(&points, &target)?;
    if gap <= 1e-9 {
        return Ok(None);
    }
    let f: Vec<f64> = f.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let truth_value: f64 = f.iter().zip(&target).map(|(a, b)| a * b).sum();
    let worst = points
        .iter()
        .map(|p| p.iter().zip(&f).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let x = 0.5 * (truth_value + worst);
    Ok(Some(DecisionProblem::basic(Act::one_shot(f)?, x, n)?))
}
