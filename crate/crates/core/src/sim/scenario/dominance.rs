use std::collections::BTreeMap;

use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use crate::decision::{
    accommodates, future_hull, meu_choice, min_expected_utility, separating_basic_problem, Act,
    DecisionProblem, MarginalHull, Verdict, PAYOFF_TOL,
};
use crate::dgp::{DgpFamily, IndependentDgp, Marginal};
use crate::error::Result;
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish_with_notes, rep_rng, replicate};

/// Decision origin used for every instance; members have period at most 2, so
/// the future marginal differs from the first one for half of them.
const ORIGIN: usize = 11;

pub(crate) fn random_marginal(d: usize, rng: &mut ChaCha8Rng) -> Marginal {
    let raw: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = raw.iter().sum();
    Marginal::renormalized(raw.into_iter().map(|x| x / s).collect())
}

pub(crate) fn random_process(d: usize, rng: &mut ChaCha8Rng) -> IndependentDgp {
    if rng.random::<bool>() {
        IndependentDgp::iid(random_marginal(d, rng))
    } else {
        IndependentDgp::periodic(vec![random_marginal(d, rng), random_marginal(d, rng)])
            .expect("nonempty cycle")
    }
}

fn mix(a: &Marginal, b: &Marginal, w: f64) -> Marginal {
    Marginal::renormalized(
        a.probs()
            .iter()
            .zip(b.probs())
            .map(|(x, y)| w * x + (1.0 - w) * y)
            .collect(),
    )
}

/// Experiment-wise mixture of two processes of period at most 2.
fn mix_process(a: &IndependentDgp, b: &IndependentDgp, w: f64) -> IndependentDgp {
    let cycle = (1..=2)
        .map(|i| mix(a.marginal_at(i), b.marginal_at(i), w))
        .collect();
    IndependentDgp::periodic(cycle).expect("nonempty cycle")
}

fn random_act(d: usize, rng: &mut ChaCha8Rng) -> Act {
    Act::one_shot((0..d).map(|_| rng.random::<f64>()).collect()).expect("finite payoffs")
}

fn random_general_problem(d: usize, rng: &mut ChaCha8Rng) -> DecisionProblem {
    let k = rng.random_range(2..=4);
    DecisionProblem::new((0..k).map(|_| random_act(d, rng)).collect(), ORIGIN).expect("acts agree")
}

fn random_basic_problem(d: usize, rng: &mut ChaCha8Rng) -> DecisionProblem {
    let f = random_act(d, rng);
    DecisionProblem::basic(f, rng.random::<f64>(), ORIGIN).expect("acts agree")
}

struct Outcome {
    free: usize,
    driven: usize,
    w_free: f64,
    w_driven: f64,
    ce: f64,
}

fn decide(
    p: &DecisionProblem,
    h0: &MarginalHull,
    h1: &MarginalHull,
    truth: &IndependentDgp,
) -> Result<Outcome> {
    let free = meu_choice(p, h0, None)?;
    let driven = meu_choice(p, h1, Some(free))?;
    let next = truth.joint_future(ORIGIN, 1);
    Ok(Outcome {
        free,
        driven,
        w_free: p.act(free).expect(&next),
        w_driven: p.act(driven).expect(&next),
        ce: min_expected_utility(p.act(free), h0)?,
    })
}

/// Initial members (the truth last) and an updated subset whose verdict matches `want`.
fn instance(
    d: usize,
    want: bool,
    rng: &mut ChaCha8Rng,
) -> Result<(DgpFamily, DgpFamily, IndependentDgp)> {
    loop {
        let m = rng.random_range(2..=5);
        let mut members: Vec<IndependentDgp> = (0..m).map(|_| random_process(d, rng)).collect();
        let truth = if rng.random::<bool>() {
            members[rng.random_range(0..m)].clone()
        } else {
            let (a, b) = (rng.random_range(0..m), rng.random_range(0..m));
            let t = mix_process(&members[a], &members[b], rng.random::<f64>());
            members.push(t.clone());
            t
        };
        let subset: Vec<IndependentDgp> = members
            .iter()
            .filter(|_| rng.random::<bool>())
            .cloned()
            .collect();
        if subset.is_empty() {
            continue;
        }
        let updated = DgpFamily::explicit(subset)?;
        match accommodates(&updated, &truth, ORIGIN, 1)? {
            Verdict::Yes if want => return Ok((DgpFamily::explicit(members)?, updated, truth)),
            Verdict::No if !want => return Ok((DgpFamily::explicit(members)?, updated, truth)),
            _ => continue,
        }
    }
}

/// Three record groups at horizon 1:
/// 0. accommodating updates; `metric` counts basic problems where the data hurt
///    plus general problems where the data-driven payoff falls below the
///    data-free certainty equivalent;
/// 1. non-accommodating updates; `metric` is 0 when a separating basic problem
///    was found and verified, 1 otherwise;
/// 2. updated hulls that mix the truth into the initial hull (`phi` is the
///    weight on the truth); `metric` counts general problems where the data hurt.
pub fn run_dominance(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let sec = cfg.dominance.clone().unwrap_or_default();
    let d = sec.d;
    let seed = cfg.seed;

    let accommodating = replicate(sec.instances, |rep| {
        let rng = &mut rep_rng(seed, 0, rep);
        let (initial, updated, truth) = instance(d, true, rng)?;
        let h0 = future_hull(&initial, ORIGIN, 1)?;
        let h1 = future_hull(&updated, ORIGIN, 1)?;
        let mut violations = 0usize;
        let mut dump = None;
        for t in 0..sec.problems {
            for general in [false, true] {
                let p = if general {
                    random_general_problem(d, rng)
                } else {
                    random_basic_problem(d, rng)
                };
                let o = decide(&p, &h0, &h1, &truth)?;
                let bench = if general { o.ce } else { o.w_free };
                if o.w_driven < bench - PAYOFF_TOL {
                    violations += 1;
                    dump.get_or_insert_with(|| {
                        format!("group 0 rep {rep} problem {t}: {p:?} truth {truth:?}")
                    });
                }
            }
        }
        Ok((
            Record {
                rep,
                group: 0,
                retained_truth: Some(true),
                metric: Some(violations as f64),
                ..Default::default()
            },
            dump,
        ))
    })?;

    let separated = replicate(sec.instances, |rep| {
        let rng = &mut rep_rng(seed, 1, rep);
        let (initial, updated, truth) = instance(d, false, rng)?;
        let h0 = future_hull(&initial, ORIGIN, 1)?;
        let h1 = future_hull(&updated, ORIGIN, 1)?;
        let mut rec = Record {
            rep,
            group: 1,
            retained_truth: Some(false),
            metric: Some(1.0),
            ..Default::default()
        };
        let mut dump = Some(format!(
            "group 1 rep {rep}: no separating problem for truth {truth:?}"
        ));
        if let Some(p) = separating_basic_problem(&h1, &truth, ORIGIN)? {
            let o = decide(&p, &h0, &h1, &truth)?;
            rec.data_free_act = Some(o.free);
            rec.data_driven_act = Some(o.driven);
            rec.payoff_data_free = Some(o.w_free);
            rec.payoff_data_driven = Some(o.w_driven);
            rec.certainty_equivalent = Some(o.ce);
            if o.w_driven < o.w_free - PAYOFF_TOL && o.w_driven < o.ce - PAYOFF_TOL {
                rec.metric = Some(0.0);
                dump = None;
            } else {
                dump = Some(format!("group 1 rep {rep}: separation failed on {p:?}"));
            }
        }
        Ok((rec, dump))
    })?;

    let mixtures = replicate(sec.instances, |rep| {
        let rng = &mut rep_rng(seed, 2, rep);
        let alpha = sec.mixture_alphas[rep % sec.mixture_alphas.len()];
        let m = rng.random_range(2..=5);
        let members: Vec<IndependentDgp> = (0..m).map(|_| random_process(d, rng)).collect();
        let truth = members[rng.random_range(0..m)].clone();
        let h0 = future_hull(&DgpFamily::explicit(members)?, ORIGIN, 1)?;
        let star = truth.joint_future(ORIGIN, 1);
        let points = h0
            .points(crate::decision::DEFAULT_HULL_CAP)?
            .iter()
            .map(|q| {
                q.iter()
                    .zip(&star)
                    .map(|(a, b)| alpha * b + (1.0 - alpha) * a)
                    .collect()
            })
            .collect();
        let h1 = MarginalHull::Points {
            d,
            horizon: 1,
            points,
        };
        let mut violations = 0usize;
        let mut dump = None;
        for t in 0..sec.mixture_problems {
            let p = random_general_problem(d, rng);
            let o = decide(&p, &h0, &h1, &truth)?;
            if o.w_driven < o.w_free - PAYOFF_TOL {
                violations += 1;
                dump.get_or_insert_with(|| {
                    format!("group 2 rep {rep} problem {t} alpha {alpha}: {p:?}")
                });
            }
        }
        Ok((
            Record {
                rep,
                group: 2,
                phi: Some(alpha),
                metric: Some(violations as f64),
                ..Default::default()
            },
            dump,
        ))
    })?;

    let mut records = Vec::new();
    let mut notes = Vec::new();
    for (r, dump) in accommodating.into_iter().chain(separated).chain(mixtures) {
        records.push(r);
        notes.extend(dump);
    }
    let total = |g: usize| {
        records
            .iter()
            .filter(|r| r.group == g)
            .filter_map(|r| r.metric)
            .sum::<f64>()
    };
    let values = BTreeMap::from([
        ("accommodating_violations".to_string(), total(0)),
        ("separation_failures".to_string(), total(1)),
        ("mixture_violations".to_string(), total(2)),
    ]);
    Ok(finish_with_notes(cfg, records, values, notes))
}
