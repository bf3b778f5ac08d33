use crate::dgp::{DgpFamily, IndependentDgp, Marginal, SampleData};
use crate::error::{Error, Result};

/// One branch of the posterior: a single listed process, or a box family read
/// as its vertex set (every process whose marginals are box vertices).
#[derive(Debug, Clone, PartialEq)]
pub enum PosteriorBranch {
    Member(IndependentDgp),
    /// `per_experiment[i]` is the conditional posterior over the vertices of
    /// experiment `i + 1`; the posterior over vertex sequences is their product.
    Vertices {
        per_experiment: Vec<Vec<(Marginal, f64)>>,
        next: Vec<Marginal>,
    },
}

/// Posterior under the uniform prior over the sample-window marginals of every
/// branch, stored per branch with factorized vertex weights (O(N) per branch).
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorWeights {
    pub branches: Vec<PosteriorBranch>,
    /// Posterior mass of each branch.
    pub masses: Vec<f64>,
    /// Sample size the posterior conditions on.
    pub window: usize,
}

impl PosteriorWeights {
    /// Predictive marginal of the next experiment: branch masses times each
    /// branch's next marginal (for vertex branches the uniform vertex average,
    /// which data about earlier experiments do not move).
    pub fn predictive(&self) -> Marginal {
        let d = match &self.branches[0] {
            PosteriorBranch::Member(p) => p.d(),
            PosteriorBranch::Vertices { next, .. } => next[0].d(),
        };
        let mut acc = vec![0.0; d];
        for (b, w) in self.branches.iter().zip(&self.masses) {
            let m = match b {
                PosteriorBranch::Member(p) => p.marginal_at(self.window + 1).clone(),
                PosteriorBranch::Vertices { next, .. } => {
                    let k = next.len() as f64;
                    Marginal::renormalized(
                        (0..d)
                            .map(|j| next.iter().map(|v| v.prob(j)).sum::<f64>() / k)
                            .collect(),
                    )
                }
            };
            acc.iter_mut().zip(m.probs()).for_each(|(a, p)| *a += w * p);
        }
        Marginal::renormalized(acc)
    }

    /// Every sample-window element with its posterior weight, as long as there
    /// are at most `cap` of them.
    pub fn elements(&self, cap: usize) -> Result<Vec<(Vec<Marginal>, f64)>> {
        let mut out = Vec::new();
        for (b, mass) in self.branches.iter().zip(&self.masses) {
            match b {
                PosteriorBranch::Member(p) => {
                    out.push((
                        (1..=self.window)
                            .map(|i| p.marginal_at(i).clone())
                            .collect(),
                        *mass,
                    ));
                }
                PosteriorBranch::Vertices { per_experiment, .. } => {
                    let mut seqs: Vec<(Vec<Marginal>, f64)> = vec![(Vec::new(), *mass)];
                    for exp in per_experiment {
                        if seqs.len().saturating_mul(exp.len()) + out.len() > cap {
                            return Err(Error::HorizonTooLarge {
                                size: seqs.len() * exp.len(),
                                cap,
                            });
                        }
                        seqs = seqs
                            .into_iter()
                            .flat_map(|(s, w)| {
                                exp.iter().map(move |(v, q)| {
                                    ([s.clone(), vec![v.clone()]].concat(), w * q)
                                })
                            })
                            .collect();
                    }
                    out.extend(seqs);
                }
            }
            if out.len() > cap {
                return Err(Error::HorizonTooLarge {
                    size: out.len(),
                    cap,
                });
            }
        }
        Ok(out)
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Posterior under the uniform prior over sample-window marginals. Listed
/// processes are one element each; a box branch contributes every vertex
/// sequence, so its evidence is `prod_i sum_v v(omega_i)`.
pub fn bayesian_posterior(f: &DgpFamily, data: &SampleData) -> Result<PosteriorWeights> {
    let n = data.len();
    let mut branches = Vec::new();
    let mut log_ev = Vec::new();
    for leaf in f.leaves() {
        match leaf {
            DgpFamily::Explicit(members) => {
                for m in members {
                    log_ev.push(m.log_likelihood(data));
                    branches.push(PosteriorBranch::Member(m.clone()));
                }
            }
            DgpFamily::Box(b) => {
                if !b.constraints().is_empty() {
                    return Err(Error::UnsupportedFamily(
                        "posterior over an updated box family".into(),
                    ));
                }
                let mut per_experiment = Vec::with_capacity(n);
                let mut ev = 0.0;
                for (k, &o) in data.outcomes().iter().enumerate() {
                    let verts = b.box_at(k + 1).vertices();
                    let total: f64 = verts.iter().map(|v| v.prob(o)).sum();
                    ev += total.ln();
                    let w = if total > 0.0 { total } else { 1.0 };
                    per_experiment.push(
                        verts
                            .into_iter()
                            .map(|v| {
                                let q = v.prob(o) / w;
                                (v, q)
                            })
                            .collect(),
                    );
                }
                log_ev.push(ev);
                branches.push(PosteriorBranch::Vertices {
                    per_experiment,
                    next: b.box_at(n + 1).vertices(),
                });
            }
            DgpFamily::Union(_) => unreachable!(),
        }
    }
    if branches.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let z = log_sum_exp(&log_ev);
    if z == f64::NEG_INFINITY {
        return Err(Error::ZeroEvidence);
    }
    let masses = log_ev.iter().map(|l| (l - z).exp()).collect();
    Ok(PosteriorWeights {
        branches,
        masses,
        window: n,
    })
}
