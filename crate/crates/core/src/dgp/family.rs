use crate::dgp::marginal::{Marginal, SIMPLEX_TOL};
use crate::dgp::process::{lcm, IndependentDgp};
use crate::dgp::reach;
use crate::dgp::sample::SampleData;
use crate::error::{Error, Result};
use crate::stats::{acceptance_test, bonferroni_test};

/// Tolerance for box-membership of a marginal.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Per-component bounds `lo <= q <= hi`, intersected with the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl MarginalBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.len() < 2 {
            return Err(Error::InvalidFamily(
                "a box needs at least two components".into(),
            ));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if !(0.0..=1.0).contains(l) || !(0.0..=1.0).contains(h) || l > h {
                return Err(Error::InvalidFamily(format!(
                    "bounds [{l}, {h}] are not a probability interval"
                )));
            }
        }
        let (sl, sh): (f64, f64) = (lo.iter().sum(), hi.iter().sum());
        if sl > 1.0 + SIMPLEX_TOL || sh < 1.0 - SIMPLEX_TOL {
            return Err(Error::InvalidFamily(format!(
                "box misses the simplex (lower bounds sum to {sl}, upper to {sh})"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Binary box: probability of outcome 1 in `[a, b]`.
    pub fn bernoulli(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![1.0 - b, a], vec![1.0 - a, b])
    }

    /// The whole simplex.
    pub fn simplex(d: usize) -> Self {
        Self {
            lo: vec![0.0; d],
            hi: vec![1.0; d],
        }
    }

    pub fn d(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn contains(&self, m: &Marginal, tol: f64) -> bool {
        m.d() == self.d()
            && m.probs()
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(p, (l, h))| *p >= l - tol && *p <= h + tol)
    }

    /// Range of component `j` over the box intersected with the simplex.
    pub fn component_range(&self, j: usize) -> (f64, f64) {
        let lo_rest: f64 = self
            .lo
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, v)| v)
            .sum();
        let hi_rest: f64 = self
            .hi
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, v)| v)
            .sum();
        (
            self.lo[j].max(1.0 - hi_rest).max(0.0),
            self.hi[j].min(1.0 - lo_rest).min(1.0),
        )
    }

    /// Point of the box minimizing `f . q`: start from `lo`, spend the remaining
    /// mass on the cheapest components first.
    pub fn argmin_linear(&self, f: &[f64]) -> Vec<f64> {
        let mut order: Vec<usize> = (0..self.d()).collect();
        order.sort_by(|&a, &b| f[a].total_cmp(&f[b]));
        self.fill(order)
    }

    pub fn min_linear(&self, f: &[f64]) -> f64 {
        self.argmin_linear(f)
            .iter()
            .zip(f)
            .map(|(q, v)| q * v)
            .sum()
    }

    pub fn max_linear(&self, f: &[f64]) -> f64 {
        let neg: Vec<f64> = f.iter().map(|v| -v).collect();
        -self.min_linear(&neg)
    }

    fn fill(&self, order: Vec<usize>) -> Vec<f64> {
        let mut q = self.lo.clone();
        let mut rest = 1.0 - self.lo.iter().sum::<f64>();
        for j in order {
            if rest <= 0.0 {
                break;
            }
            let add = (self.hi[j] - self.lo[j]).min(rest);
            q[j] += add;
            rest -= add;
        }
        q
    }

    /// A point of the box with every achievable-positive component positive.
    pub(crate) fn interior_point(&self) -> Vec<f64> {
        let slack = 1.0 - self.lo.iter().sum::<f64>();
        let room: f64 = self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).sum();
        if room <= 0.0 {
            return self.lo.clone();
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| l + slack * (h - l) / room)
            .collect()
    }

    /// Extreme points of the box intersected with the simplex.
    pub fn vertices(&self) -> Vec<Marginal> {
        let d = self.d();
        let mut out: Vec<Marginal> = Vec::new();
        for free in 0..d {
            for mask in 0u64..(1u64 << (d - 1)) {
                let mut q = vec![0.0; d];
                let mut bit = 0;
                let mut sum = 0.0;
                for k in (0..d).filter(|&k| k != free) {
                    q[k] = if mask >> bit & 1 == 1 {
                        self.hi[k]
                    } else {
                        self.lo[k]
                    };
                    sum += q[k];
                    bit += 1;
                }
                let v = 1.0 - sum;
                if v < self.lo[free] - 1e-12 || v > self.hi[free] + 1e-12 {
                    continue;
                }
                q[free] = v.clamp(self.lo[free], self.hi[free]);
                let m = Marginal::renormalized(q);
                if !out.iter().any(|o| o.approx_eq(&m, 1e-12)) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// The face on which component `j` takes its largest achievable value.
    pub fn pinned(&self, j: usize) -> MarginalBox {
        let (_, top) = self.component_range(j);
        let mut b = self.clone();
        b.lo[j] = top;
        b.hi[j] = top;
        b
    }
}

/// A restriction recorded on a box family by an updating rule. Each one only
/// constrains the first `n` experiments.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleConstraint {
    /// Sup-norm distance between the average of the first `n` marginals and `center` is below `radius`.
    AverageBall {
        n: usize,
        center: Marginal,
        radius: f64,
    },
    /// The i.i.d. test at the average of the first `n` marginals accepts `phi`.
    Acceptance {
        n: usize,
        phi: Marginal,
        alpha: f64,
        bonferroni: bool,
    },
    /// Each of the first `data.len()` marginals maximizes the probability of its observed outcome.
    MaxLikelihood { data: SampleData },
}

impl SampleConstraint {
    pub fn n(&self) -> usize {
        match self {
            SampleConstraint::AverageBall { n, .. } | SampleConstraint::Acceptance { n, .. } => *n,
            SampleConstraint::MaxLikelihood { data } => data.len(),
        }
    }
}

/// Processes whose marginal at experiment `i` lies in `cycle[(i-1) mod L]`, plus
/// any recorded sample constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxFamily {
    cycle: Vec<MarginalBox>,
    constraints: Vec<SampleConstraint>,
}

impl BoxFamily {
    pub fn new(cycle: Vec<MarginalBox>) -> Result<Self> {
        let first = cycle
            .first()
            .ok_or_else(|| Error::InvalidFamily("box family needs at least one box".into()))?;
        if let Some(b) = cycle.iter().find(|b| b.d() != first.d()) {
            return Err(Error::DimensionMismatch {
                expected: first.d(),
                got: b.d(),
            });
        }
        Ok(Self {
            cycle,
            constraints: Vec::new(),
        })
    }

    /// The same box at every experiment.
    pub fn stationary(b: MarginalBox) -> Self {
        Self {
            cycle: vec![b],
            constraints: Vec::new(),
        }
    }

    /// Binary family with the probability of outcome 1 in `[a, b]` at every experiment.
    pub fn bernoulli(a: f64, b: f64) -> Result<Self> {
        Ok(Self::stationary(MarginalBox::bernoulli(a, b)?))
    }

    pub fn d(&self) -> usize {
        self.cycle[0].d()
    }

    pub fn cycle(&self) -> &[MarginalBox] {
        &self.cycle
    }

    pub fn constraints(&self) -> &[SampleConstraint] {
        &self.constraints
    }

    pub fn box_at(&self, i: usize) -> &MarginalBox {
        assert!(i >= 1, "experiments are indexed from 1");
        &self.cycle[(i - 1) % self.cycle.len()]
    }

    /// The base family with one more constraint; callers decide feasibility.
    pub fn with_constraint(&self, c: SampleConstraint) -> Self {
        let mut out = self.clone();
        out.constraints.push(c);
        out
    }

    /// Does every marginal of `p` sit in its box (checked over prefix plus one joint period)?
    pub fn contains_base(&self, p: &IndependentDgp) -> bool {
        let (m, per) = p.description_len();
        let horizon = m + lcm(per, self.cycle.len());
        (1..=horizon).all(|i| self.box_at(i).contains(p.marginal_at(i), MEMBERSHIP_TOL))
    }

    pub fn contains(&self, p: &IndependentDgp) -> Result<bool> {
        if p.d() != self.d() || !self.contains_base(p) {
            return Ok(false);
        }
        for c in &self.constraints {
            let ok = match c {
                SampleConstraint::AverageBall { n, center, radius } => {
                    p.average_sample_marginals(*n)?.sup_distance(center) < *radius
                }
                SampleConstraint::Acceptance {
                    n,
                    phi,
                    alpha,
                    bonferroni,
                } => {
                    let pbar = p.average_sample_marginals(*n)?;
                    if *bonferroni {
                        bonferroni_test(phi, &pbar, *n, *alpha)?
                    } else {
                        acceptance_test(phi, &pbar, *n, *alpha)?
                    }
                }
                SampleConstraint::MaxLikelihood { data } => {
                    data.outcomes().iter().enumerate().all(|(k, &o)| {
                        let (_, top) = self.box_at(k + 1).component_range(o);
                        p.marginal_at(k + 1).prob(o) >= top - MEMBERSHIP_TOL
                    })
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Does some process satisfy every recorded constraint?
    pub fn is_feasible(&self) -> Result<bool> {
        reach::box_family_feasible(self)
    }
}

/// A structured set of independent processes.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(
    try_from = "crate::dgp::json::FamilyDoc",
    into = "crate::dgp::json::FamilyDoc"
)]
pub enum DgpFamily {
    Box(BoxFamily),
    Explicit(Vec<IndependentDgp>),
    /// An empty union is the empty family (what an update returns when it rules everything out).
    Union(Vec<DgpFamily>),
}

impl DgpFamily {
    pub fn explicit(members: Vec<IndependentDgp>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidFamily("explicit set is empty".into()))?;
        let d = first.d();
        if let Some(m) = members.iter().find(|m| m.d() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: m.d(),
            });
        }
        Ok(DgpFamily::Explicit(members))
    }

    pub fn singleton(p: IndependentDgp) -> Self {
        DgpFamily::Explicit(vec![p])
    }

    pub fn union(branches: Vec<DgpFamily>) -> Result<Self> {
        let mut ds = branches.iter().filter_map(|b| b.d());
        if let Some(d) = ds.next() {
            if let Some(other) = ds.find(|&o| o != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: other,
                });
            }
        }
        Ok(DgpFamily::Union(branches))
    }

    pub fn empty() -> Self {
        DgpFamily::Union(Vec::new())
    }

    /// Number of outcomes, or `None` for a structurally empty family.
    pub fn d(&self) -> Option<usize> {
        match self {
            DgpFamily::Box(b) => Some(b.d()),
            DgpFamily::Explicit(m) => m.first().map(|p| p.d()),
            DgpFamily::Union(bs) => bs.iter().find_map(|b| b.d()),
        }
    }

    /// Structurally empty. Updates drop infeasible branches, so their results
    /// are empty exactly when this holds.
    pub fn is_empty(&self) -> bool {
        match self {
            DgpFamily::Box(_) => false,
            DgpFamily::Explicit(m) => m.is_empty(),
            DgpFamily::Union(bs) => bs.iter().all(|b| b.is_empty()),
        }
    }

    /// Leaf families (boxes and explicit sets), unions flattened.
    pub fn leaves(&self) -> Vec<&DgpFamily> {
        match self {
            DgpFamily::Union(bs) => bs.iter().flat_map(|b| b.leaves()).collect(),
            _ => vec![self],
        }
    }

    pub fn contains(&self, p: &IndependentDgp) -> Result<bool> {
        family_contains(self, p)
    }
}

/// Membership of `p` in `f`: boxes are checked over prefix plus one joint period,
/// explicit sets by matching marginal sequences.
pub fn family_contains(f: &DgpFamily, p: &IndependentDgp) -> Result<bool> {
    match f {
        DgpFamily::Box(b) => b.contains(p),
        DgpFamily::Explicit(members) => {
            Ok(members.iter().any(|m| m.same_process(p, MEMBERSHIP_TOL)))
        }
        DgpFamily::Union(bs) => {
            for b in bs {
                if family_contains(b, p)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}
