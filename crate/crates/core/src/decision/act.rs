use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for payoff comparisons.
pub const PAYOFF_TOL: f64 = 1e-12;

/// A payoff table over the joint outcomes of the next `horizon` experiments,
/// indexed with the earliest experiment as the most significant digit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ActDoc", into = "ActDoc")]
pub struct Act {
    d: usize,
    horizon: usize,
    payoffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ActDoc {
    outcomes: usize,
    horizon: usize,
    payoffs: Vec<f64>,
}

impl TryFrom<ActDoc> for Act {
    type Error = Error;
    fn try_from(doc: ActDoc) -> Result<Self> {
        Act::new(doc.outcomes, doc.horizon, doc.payoffs)
    }
}

impl From<Act> for ActDoc {
    fn from(a: Act) -> Self {
        ActDoc {
            outcomes: a.d,
            horizon: a.horizon,
            payoffs: a.payoffs,
        }
    }
}

impl Act {
    pub fn new(d: usize, horizon: usize, payoffs: Vec<f64>) -> Result<Self> {
        if d < 2 || horizon == 0 {
            return Err(Error::InvalidAct(format!(
                "need d >= 2 and horizon >= 1, got d = {d}, horizon = {horizon}"
            )));
        }
        let want = d
            .checked_pow(horizon as u32)
            .ok_or_else(|| Error::InvalidAct("payoff table too large".into()))?;
        if payoffs.len() != want {
            return Err(Error::InvalidAct(format!(
                "expected {want} payoffs, got {}",
                payoffs.len()
            )));
        }
        if let Some(u) = payoffs.iter().find(|u| !(0.0..=1.0).contains(*u)) {
            return Err(Error::InvalidAct(format!("payoff {u} outside [0, 1]")));
        }
        Ok(Self {
            d,
            horizon,
            payoffs,
        })
    }

    /// Act on the next experiment only.
    pub fn one_shot(payoffs: Vec<f64>) -> Result<Self> {
        Self::new(payoffs.len(), 1, payoffs)
    }

    pub fn constant(d: usize, horizon: usize, x: f64) -> Result<Self> {
        Self::new(d, horizon, vec![x; d.pow(horizon as u32)])
    }

    /// Pays 1 if the next experiment yields outcome `j`, else 0.
    pub fn bet_on(d: usize, j: usize) -> Result<Self> {
        let mut p = vec![0.0; d];
        p[j] = 1.0;
        Self::one_shot(p)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn payoffs(&self) -> &[f64] {
        &self.payoffs
    }

    pub fn is_constant(&self) -> bool {
        self.payoffs.iter().all(|u| *u == self.payoffs[0])
    }

    /// Expectation under a joint vector over the same table.
    pub fn expect(&self, joint: &[f64]) -> f64 {
        debug_assert_eq!(joint.len(), self.payoffs.len());
        self.payoffs.iter().zip(joint).map(|(u, p)| u * p).sum()
    }
}

/// A finite menu of acts on a common horizon, starting after experiment `origin`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionProblem {
    acts: Vec<Act>,
    origin: usize,
}

impl DecisionProblem {
    pub fn new(acts: Vec<Act>, origin: usize) -> Result<Self> {
        let first = acts
            .first()
            .ok_or_else(|| Error::InvalidProblem("no acts".into()))?;
        if acts
            .iter()
            .any(|a| a.horizon != first.horizon || a.d != first.d)
        {
            return Err(Error::InvalidProblem(
                "acts differ in horizon or outcome count".into(),
            ));
        }
        Ok(Self { acts, origin })
    }

    /// `{f, x}` with `x` constant.
    pub fn basic(f: Act, x: f64, origin: usize) -> Result<Self> {
        let c = Act::constant(f.d, f.horizon, x)?;
        Self::new(vec![f, c], origin)
    }

    pub fn acts(&self) -> &[Act] {
        &self.acts
    }

    pub fn act(&self, i: usize) -> &Act {
        &self.acts[i]
    }

    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acts.is_empty()
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn horizon(&self) -> usize {
        self.acts[0].horizon
    }

    pub fn d(&self) -> usize {
        self.acts[0].d
    }

    pub fn is_basic(&self) -> bool {
        self.acts.len() == 2 && self.acts.iter().filter(|a| a.is_constant()).count() >= 1
    }
}
