use crate::dgp::marginal::Marginal;
use crate::dgp::sample::SampleData;
use crate::error::{Error, Result};

/// How marginals continue after the explicit prefix.
#[derive(Debug, Clone, PartialEq)]
pub enum Tail {
    Iid(Marginal),
    /// Cycled forever, starting right after the prefix.
    Periodic(Vec<Marginal>),
}

impl Tail {
    fn period(&self) -> usize {
        match self {
            Tail::Iid(_) => 1,
            Tail::Periodic(cycle) => cycle.len(),
        }
    }
}

/// A sequence of independent marginals, described by a finite prefix and a tail rule.
///
/// Experiments are indexed from 1. The joint law of any finite window is the
/// product of the marginals in it; nothing beyond the marginals is stored.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(
    try_from = "crate::dgp::json::DgpDoc",
    into = "crate::dgp::json::DgpDoc"
)]
pub struct IndependentDgp {
    prefix: Vec<Marginal>,
    tail: Tail,
}

impl IndependentDgp {
    pub fn new(prefix: Vec<Marginal>, tail: Tail) -> Result<Self> {
        let d = match &tail {
            Tail::Iid(m) => m.d(),
            Tail::Periodic(cycle) => {
                let first = cycle.first().ok_or_else(|| {
                    Error::InvalidDgp("periodic tail needs at least one marginal".into())
                })?;
                first.d()
            }
        };
        let all = prefix.iter().chain(match &tail {
            Tail::Iid(m) => std::slice::from_ref(m),
            Tail::Periodic(cycle) => cycle.as_slice(),
        });
        for m in all {
            if m.d() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: m.d(),
                });
            }
        }
        Ok(Self { prefix, tail })
    }

    pub fn iid(m: Marginal) -> Self {
        Self {
            prefix: Vec::new(),
            tail: Tail::Iid(m),
        }
    }

    pub fn periodic(cycle: Vec<Marginal>) -> Result<Self> {
        Self::new(Vec::new(), Tail::Periodic(cycle))
    }

    /// i.i.d. binary process with probability `p1` of outcome 1.
    pub fn bernoulli_iid(p1: f64) -> Result<Self> {
        Ok(Self::iid(Marginal::bernoulli(p1)?))
    }

    /// Binary process cycling through the given probabilities of outcome 1.
    pub fn bernoulli_periodic(p1s: &[f64]) -> Result<Self> {
        Self::periodic(
            p1s.iter()
                .map(|&p| Marginal::bernoulli(p))
                .collect::<Result<_>>()?,
        )
    }

    pub fn prefix(&self) -> &[Marginal] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn d(&self) -> usize {
        self.marginal_at(1).d()
    }

    /// Experiments after which the marginal sequence is periodic: `(prefix length, period)`.
    pub fn description_len(&self) -> (usize, usize) {
        (self.prefix.len(), self.tail.period())
    }

    /// Marginal of experiment `i` (1-based).
    pub fn marginal_at(&self, i: usize) -> &Marginal {
        assert!(i >= 1, "experiments are indexed from 1");
        if i <= self.prefix.len() {
            return &self.prefix[i - 1];
        }
        let k = i - self.prefix.len() - 1;
        match &self.tail {
            Tail::Iid(m) => m,
            Tail::Periodic(cycle) => &cycle[k % cycle.len()],
        }
    }

    /// Distinct marginal slots among experiments `1..=n` with their multiplicities,
    /// in O(prefix + period).
    pub fn class_counts(&self, n: usize) -> Vec<(&Marginal, usize)> {
        let m = self.prefix.len().min(n);
        let mut out: Vec<(&Marginal, usize)> = self.prefix[..m].iter().map(|p| (p, 1)).collect();
        let rest = n - m;
        if rest > 0 {
            match &self.tail {
                Tail::Iid(p) => out.push((p, rest)),
                Tail::Periodic(cycle) => {
                    let full = rest / cycle.len();
                    let rem = rest % cycle.len();
                    for (k, p) in cycle.iter().enumerate() {
                        let w = full + usize::from(k < rem);
                        if w > 0 {
                            out.push((p, w));
                        }
                    }
                }
            }
        }
        out
    }

    /// Componentwise sum of the marginals of experiments `1..=n`.
    pub fn sum_marginals(&self, n: usize) -> Vec<f64> {
        let mut acc = vec![0.0; self.d()];
        for (m, w) in self.class_counts(n) {
            acc.iter_mut()
                .zip(m.probs())
                .for_each(|(a, p)| *a += w as f64 * p);
        }
        acc
    }

    /// Average of the marginals of experiments `1..=n`.
    pub fn average_sample_marginals(&self, n: usize) -> Result<Marginal> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "average over zero experiments".into(),
            ));
        }
        let sum = self.sum_marginals(n);
        Ok(Marginal::renormalized(
            sum.into_iter().map(|s| s / n as f64).collect(),
        ))
    }

    /// Marginals of experiments `n+1..=n+k`.
    pub fn future_marginals(&self, n: usize, k: usize) -> Vec<&Marginal> {
        (n + 1..=n + k).map(|i| self.marginal_at(i)).collect()
    }

    /// Joint law of experiments `n+1..=n+k` as a vector of length `d^k`; the
    /// earliest experiment is the most significant digit of the index.
    pub fn joint_future(&self, n: usize, k: usize) -> Vec<f64> {
        product_measure(&self.future_marginals(n, k))
    }

    /// `sum_i ln P_i(omega_i)`; `-inf` when some observed outcome has probability zero.
    pub fn log_likelihood(&self, data: &SampleData) -> f64 {
        data.outcomes()
            .iter()
            .enumerate()
            .map(|(i, &o)| self.marginal_at(i + 1).prob(o).ln())
            .sum()
    }

    /// Number of experiments after which comparisons against a period-`other`
    /// pattern repeat.
    pub(crate) fn horizon_with(&self, other_prefix: usize, other_period: usize) -> usize {
        let (m, p) = self.description_len();
        m.max(other_prefix) + lcm(p, other_period)
    }

    /// Same marginal sequence (within `tol`), compared over one joint period.
    pub fn same_process(&self, other: &IndependentDgp, tol: f64) -> bool {
        if self.d() != other.d() {
            return false;
        }
        let (m, p) = other.description_len();
        (1..=self.horizon_with(m, p))
            .all(|i| self.marginal_at(i).approx_eq(other.marginal_at(i), tol))
    }
}

/// Product of marginals as a flat joint vector, first factor most significant.
pub fn product_measure(factors: &[&Marginal]) -> Vec<f64> {
    let mut joint = vec![1.0];
    for m in factors {
        let mut next = Vec::with_capacity(joint.len() * m.d());
        for w in &joint {
            next.extend(m.probs().iter().map(|p| w * p));
        }
        joint = next;
    }
    joint
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
