use crate::dgp::sample::empirical_from_counts;
use crate::dgp::{DgpFamily, IndependentDgp, Marginal, SampleConstraint, SampleData};
use crate::error::{Error, Result};
use crate::stats::{acceptance_test, bonferroni_test};
use crate::update::{Rule, UpdateParams};

/// Rebuild `f` leaf by leaf; leaves mapped to `None` are dropped.
fn map_leaves(
    f: &DgpFamily,
    op: &mut impl FnMut(&DgpFamily) -> Result<Option<DgpFamily>>,
) -> Result<Option<DgpFamily>> {
    match f {
        DgpFamily::Union(bs) => {
            let mut kept = Vec::new();
            for b in bs {
                if let Some(x) = map_leaves(b, op)? {
                    kept.push(x);
                }
            }
            Ok(Some(DgpFamily::Union(kept)))
        }
        leaf => op(leaf),
    }
}

fn finish(f: Option<DgpFamily>) -> DgpFamily {
    f.unwrap_or_else(DgpFamily::empty)
}

fn phi_of(f: &DgpFamily, data: &SampleData) -> Result<Marginal> {
    if data.is_empty() {
        return Err(Error::EmptySample);
    }
    let d = f.d().ok_or(Error::EmptyFamily)?;
    if let Some(&index) = data.outcomes().iter().find(|&&o| o >= d) {
        return Err(Error::OutcomeOutOfRange { index, d });
    }
    empirical_from_counts(&data.counts(d))
}

/// Keep the processes satisfying `keep` (explicit members) and record `c` on boxes,
/// dropping boxes that `c` makes infeasible.
fn restrict(
    f: &DgpFamily,
    c: SampleConstraint,
    keep: impl Fn(&IndependentDgp) -> Result<bool>,
) -> Result<DgpFamily> {
    let mut op = |leaf: &DgpFamily| -> Result<Option<DgpFamily>> {
        match leaf {
            DgpFamily::Box(b) => {
                let nb = b.with_constraint(c.clone());
                Ok(nb.is_feasible()?.then_some(DgpFamily::Box(nb)))
            }
            DgpFamily::Explicit(members) => {
                let mut kept = Vec::new();
                for m in members {
                    if keep(m)? {
                        kept.push(m.clone());
                    }
                }
                Ok((!kept.is_empty()).then_some(DgpFamily::Explicit(kept)))
            }
            DgpFamily::Union(_) => unreachable!(),
        }
    };
    Ok(finish(map_leaves(f, &mut op)?))
}

/// Processes whose average of the first `N` marginals is within `epsilon`
/// (sup norm, strictly) of the empirical distribution.
pub fn average_then_update(
    f: &DgpFamily,
    data: &SampleData,
    params: &UpdateParams,
) -> Result<DgpFamily> {
    params.validate()?;
    let phi = phi_of(f, data)?;
    if params.epsilon > 1.0 {
        return Ok(f.clone());
    }
    let n = data.len();
    let eps = params.epsilon;
    let c = SampleConstraint::AverageBall {
        n,
        center: phi.clone(),
        radius: eps,
    };
    restrict(f, c, |p| {
        Ok(p.average_sample_marginals(n)?.sup_distance(&phi) < eps)
    })
}

/// Processes whose average of the first `N` marginals, taken as an i.i.d. null,
/// passes the ellipsoid test at level `alpha` (or the Bonferroni rectangle when
/// `params.bonferroni` is set).
pub fn robust_iid_update(
    f: &DgpFamily,
    data: &SampleData,
    params: &UpdateParams,
) -> Result<DgpFamily> {
    params.validate()?;
    let phi = phi_of(f, data)?;
    let (n, alpha, bonferroni) = (data.len(), params.alpha, params.bonferroni);
    let c = SampleConstraint::Acceptance {
        n,
        phi: phi.clone(),
        alpha,
        bonferroni,
    };
    restrict(f, c, |p| {
        let pbar = p.average_sample_marginals(n)?;
        if bonferroni {
            bonferroni_test(&phi, &pbar, n, alpha)
        } else {
            acceptance_test(&phi, &pbar, n, alpha)
        }
    })
}

/// Robust i.i.d. update with the per-outcome intervals at level `1 - alpha/(d-1)`.
pub fn bonferroni_update(
    f: &DgpFamily,
    data: &SampleData,
    params: &UpdateParams,
) -> Result<DgpFamily> {
    robust_iid_update(
        f,
        data,
        &UpdateParams {
            bonferroni: true,
            ..*params
        },
    )
}

/// Relative tolerance when comparing log-likelihood suprema.
const LL_TOL: f64 = 1e-9;

fn leaf_sup_loglik(leaf: &DgpFamily, data: &SampleData) -> f64 {
    match leaf {
        DgpFamily::Box(b) => data
            .outcomes()
            .iter()
            .enumerate()
            .map(|(k, &o)| b.box_at(k + 1).component_range(o).1.ln())
            .sum(),
        DgpFamily::Explicit(members) => members
            .iter()
            .map(|m| m.log_likelihood(data))
            .fold(f64::NEG_INFINITY, f64::max),
        DgpFamily::Union(_) => unreachable!(),
    }
}

/// Processes attaining the largest likelihood of the data. Boxes attain their
/// supremum by maximizing each experiment's probability of its observed outcome;
/// every maximizer is retained.
pub fn max_likelihood_update(f: &DgpFamily, data: &SampleData) -> Result<DgpFamily> {
    phi_of(f, data)?;
    let top = f
        .leaves()
        .iter()
        .map(|l| leaf_sup_loglik(l, data))
        .fold(f64::NEG_INFINITY, f64::max);
    let cut = if top.is_finite() {
        top - LL_TOL * top.abs().max(1.0)
    } else {
        top
    };
    let mut op = |leaf: &DgpFamily| -> Result<Option<DgpFamily>> {
        if leaf_sup_loglik(leaf, data) < cut {
            return Ok(None);
        }
        match leaf {
            DgpFamily::Box(b) => Ok(Some(DgpFamily::Box(
                b.with_constraint(SampleConstraint::MaxLikelihood { data: data.clone() }),
            ))),
            DgpFamily::Explicit(members) => Ok(Some(DgpFamily::Explicit(
                members
                    .iter()
                    .filter(|m| m.log_likelihood(data) >= cut)
                    .cloned()
                    .collect(),
            ))),
            DgpFamily::Union(_) => unreachable!(),
        }
    };
    Ok(finish(map_leaves(f, &mut op)?))
}

/// Conditioning each process on the data leaves its future marginals unchanged,
/// so the updated family is the initial one.
pub fn full_bayesian_update(f: &DgpFamily, _data: &SampleData) -> Result<DgpFamily> {
    Ok(f.clone())
}

/// Apply a set-valued rule. `Rule::Bayes` is not set-valued; see `bayesian_posterior`.
pub fn apply_rule(
    rule: Rule,
    f: &DgpFamily,
    data: &SampleData,
    params: &UpdateParams,
) -> Result<DgpFamily> {
    match rule {
        Rule::Atu => average_then_update(f, data, params),
        Rule::Ml => max_likelihood_update(f, data),
        Rule::Fb => full_bayesian_update(f, data),
        Rule::Riid => robust_iid_update(f, data, params),
        Rule::Bonferroni => bonferroni_update(f, data, params),
        Rule::Bayes => Err(Error::InvalidParameter(
            "the Bayesian rule yields a posterior, not a family".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::{accommodates, future_hull, Verdict};
    use crate::dgp::BoxFamily;

    fn illustrative() -> DgpFamily {
        DgpFamily::union(vec![
            DgpFamily::Box(BoxFamily::bernoulli(0.6, 1.0).unwrap()),
            DgpFamily::singleton(IndependentDgp::bernoulli_iid(1.0 / 3.0).unwrap()),
        ])
        .unwrap()
    }

    fn third() -> IndependentDgp {
        IndependentDgp::bernoulli_iid(1.0 / 3.0).unwrap()
    }

    #[test]
    fn atu_at_frequency_point_eight() {
        let data = SampleData::binary_with_count(1000, 800);
        let u = average_then_update(&illustrative(), &data, &UpdateParams::default()).unwrap();
        assert!(u
            .contains(&IndependentDgp::bernoulli_iid(0.8).unwrap())
            .unwrap());
        assert!(u
            .contains(&IndependentDgp::bernoulli_periodic(&[0.6, 1.0]).unwrap())
            .unwrap());
        assert!(!u.contains(&third()).unwrap());
        assert!(!u
            .contains(&IndependentDgp::bernoulli_iid(0.6).unwrap())
            .unwrap());
    }

    #[test]
    fn atu_at_frequency_one_third() {
        let data = SampleData::binary_with_count(900, 300);
        let u = average_then_update(&illustrative(), &data, &UpdateParams::default()).unwrap();
        assert!(u.contains(&third()).unwrap());
        assert_eq!(u.leaves().len(), 1, "the whole box is ruled out");
    }

    #[test]
    fn wide_radius_keeps_everything() {
        let data = SampleData::binary_with_count(10, 3);
        let f = illustrative();
        let p = UpdateParams {
            epsilon: 1.5,
            ..Default::default()
        };
        assert_eq!(average_then_update(&f, &data, &p).unwrap(), f);
        let p = UpdateParams {
            epsilon: 1.0,
            ..Default::default()
        };
        assert_eq!(
            average_then_update(&f, &data, &p).unwrap().leaves().len(),
            2
        );
    }

    #[test]
    fn ml_excludes_truth_at_one_third() {
        let data = SampleData::binary_with_count(300, 100);
        let u = max_likelihood_update(&illustrative(), &data).unwrap();
        assert!(!u.contains(&third()).unwrap());
        let h = future_hull(&u, 300, 1).unwrap();
        assert_eq!(accommodates(&u, &third(), 300, 1).unwrap(), Verdict::No);
        assert!(matches!(h, crate::decision::MarginalHull::Rect { .. }));
        // the endpoint process matched to the data is the maximizer
        let mut pattern = vec![1.0; 100];
        pattern.extend(vec![0.6; 200]);
        let endpoint = IndependentDgp::new(
            pattern
                .iter()
                .map(|&p| Marginal::bernoulli(p).unwrap())
                .collect(),
            crate::dgp::Tail::Iid(Marginal::bernoulli(0.8).unwrap()),
        )
        .unwrap();
        assert!(u.contains(&endpoint).unwrap());
    }

    #[test]
    fn ml_on_explicit_sets() {
        let two = DgpFamily::explicit(vec![
            IndependentDgp::bernoulli_iid(0.2).unwrap(),
            IndependentDgp::bernoulli_iid(0.8).unwrap(),
        ])
        .unwrap();
        let u = max_likelihood_update(&two, &SampleData::binary_with_count(10, 10)).unwrap();
        assert_eq!(
            u,
            DgpFamily::Explicit(vec![IndependentDgp::bernoulli_iid(0.8).unwrap()])
        );
        let one = DgpFamily::singleton(third());
        assert_eq!(
            max_likelihood_update(&one, &SampleData::binary_with_count(5, 5)).unwrap(),
            one
        );
    }

    #[test]
    fn riid_binary_decisions() {
        let f = DgpFamily::explicit(vec![
            IndependentDgp::bernoulli_iid(0.4).unwrap(),
            IndependentDgp::bernoulli_iid(0.5).unwrap(),
        ])
        .unwrap();
        let u = robust_iid_update(
            &f,
            &SampleData::binary_with_count(100, 50),
            &UpdateParams::default(),
        )
        .unwrap();
        assert_eq!(
            u,
            DgpFamily::Explicit(vec![IndependentDgp::bernoulli_iid(0.5).unwrap()])
        );
    }

    #[test]
    fn empty_sample_rejected() {
        let e = SampleData::binary(&[]).unwrap();
        assert_eq!(
            average_then_update(&illustrative(), &e, &UpdateParams::default()),
            Err(Error::EmptySample)
        );
        assert_eq!(
            max_likelihood_update(&illustrative(), &e),
            Err(Error::EmptySample)
        );
    }

    #[test]
    fn full_bayes_is_identity() {
        let f = illustrative();
        assert_eq!(
            full_bayesian_update(&f, &SampleData::binary_with_count(4, 1)).unwrap(),
            f
        );
    }
}
