//! Property tests over randomly generated processes, families, data and acts.
//! Each case draws its objects from a ChaCha stream seeded by proptest.

mod common;

use common::{bisect, marginal, process, rng};
use proptest::prelude::*;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use robust_update::decision::{
    future_hull, meu_choice, min_expected_utility, objective_payoff, Act, DecisionProblem,
};
use robust_update::dgp::{
    family_contains, sample_with, BoxFamily, DgpFamily, IndependentDgp, Marginal, MarginalBox,
    SampleData, SIMPLEX_TOL,
};
use robust_update::models::{
    bern_prediction_asymptotic, bern_prediction_ml, bern_theta_asymptotic, bern_theta_finite,
};
use robust_update::stats::{
    acceptance_test, average_covariance, chi_square_quantile, inverse_quadratic_form,
    multinomial_covariance, wilson_interval,
};
use robust_update::update::{apply_rule, average_then_update, Rule, UpdateParams};

fn random_box(d: usize, r: &mut ChaCha8Rng) -> MarginalBox {
    let m = marginal(d, 0.3, r);
    let w = r.random_range(0.02..0.3);
    let lo = m.probs().iter().map(|p| (p - w).max(0.0)).collect();
    let hi = m.probs().iter().map(|p| (p + w).min(1.0)).collect();
    MarginalBox::new(lo, hi).unwrap()
}

/// A random point of the box: a convex combination of its vertices.
fn point_in(b: &MarginalBox, r: &mut ChaCha8Rng) -> Marginal {
    let verts = b.vertices();
    let w: Vec<f64> = verts.iter().map(|_| r.random::<f64>() + 1e-3).collect();
    let s: f64 = w.iter().sum();
    let mut p = vec![0.0; b.d()];
    for (v, wi) in verts.iter().zip(&w) {
        for (pj, vj) in p.iter_mut().zip(v.probs()) {
            *pj += wi / s * vj;
        }
    }
    let head: f64 = p[..p.len() - 1].iter().sum();
    *p.last_mut().unwrap() = (1.0 - head).max(0.0);
    Marginal::new(p).unwrap()
}

/// A process inside a (possibly periodic) box family.
fn member_of(f: &BoxFamily, r: &mut ChaCha8Rng) -> IndependentDgp {
    let cycle: Vec<Marginal> = f.cycle().iter().map(|b| point_in(b, r)).collect();
    if cycle.len() == 1 {
        IndependentDgp::iid(cycle[0].clone())
    } else {
        IndependentDgp::periodic(cycle).unwrap()
    }
}

fn random_family(d: usize, r: &mut ChaCha8Rng) -> (DgpFamily, Vec<IndependentDgp>) {
    let members: Vec<IndependentDgp> = (0..3).map(|_| process(d, 0.5, r)).collect();
    let period = r.random_range(1..=2);
    let bf = BoxFamily::new((0..period).map(|_| random_box(d, r)).collect()).unwrap();
    let mut probes = members.clone();
    probes.extend((0..4).map(|_| member_of(&bf, r)));
    probes.extend((0..3).map(|_| process(d, 0.5, r)));
    let f = DgpFamily::union(vec![
        DgpFamily::explicit(members).unwrap(),
        DgpFamily::Box(bf),
    ])
    .unwrap();
    (f, probes)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn marginals_stay_on_the_simplex(seed in any::<u64>(), d in 2usize..8, eta in 0.0f64..0.1) {
        let m = marginal(d, 0.0, &mut rng(seed)).floored(eta);
        prop_assert!((m.probs().iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOL);
        prop_assert!(m.probs().iter().all(|p| *p >= 0.0));
    }

    #[test]
    fn log_likelihood_adds_over_concatenated_samples(seed in any::<u64>(), d in 2usize..5, na in 0usize..30, nb in 1usize..30) {
        let r = &mut rng(seed);
        let p = process(d, 0.2, r);
        let a = sample_with(&p, na, r);
        let b = SampleData::new((0..nb).map(|_| r.random_range(0..d)).collect(), d).unwrap();
        let tail: f64 = b.outcomes().iter().enumerate().map(|(k, &o)| p.marginal_at(na + k + 1).prob(o).ln()).sum();
        let whole = p.log_likelihood(&a.concat(&b));
        prop_assert!((whole - p.log_likelihood(&a) - tail).abs() <= 1e-9 * whole.abs().max(1.0));
    }

    #[test]
    fn union_membership_is_monotone(seed in any::<u64>(), d in 2usize..4) {
        let r = &mut rng(seed);
        let (f, probes) = random_family(d, r);
        let (g, more) = random_family(d, r);
        let u = DgpFamily::union(vec![f.clone(), g.clone()]).unwrap();
        for p in probes.iter().chain(&more) {
            let inside = family_contains(&f, p).unwrap() || family_contains(&g, p).unwrap();
            prop_assert_eq!(family_contains(&u, p).unwrap(), inside);
        }
    }

    #[test]
    fn every_rule_refines_the_initial_family(seed in any::<u64>(), d in 2usize..4, n in 5usize..60) {
        let r = &mut rng(seed);
        let (f, probes) = random_family(d, r);
        let data = sample_with(&probes[r.random_range(0..probes.len())], n, r);
        let params = UpdateParams { epsilon: r.random_range(0.02..0.5), alpha: r.random_range(0.01..0.5), bonferroni: false };
        for rule in [Rule::Atu, Rule::Ml, Rule::Fb, Rule::Riid, Rule::Bonferroni] {
            let g = apply_rule(rule, &f, &data, &params).unwrap();
            for p in &probes {
                if family_contains(&g, p).unwrap() {
                    prop_assert!(family_contains(&f, p).unwrap(), "{:?} kept a process outside the family", rule);
                }
            }
        }
    }

    #[test]
    fn atu_grows_with_epsilon(seed in any::<u64>(), d in 2usize..4, n in 5usize..60, e1 in 0.01f64..0.5, de in 0.0f64..0.5) {
        let r = &mut rng(seed);
        let (f, probes) = random_family(d, r);
        let data = sample_with(&probes[0], n, r);
        let small = average_then_update(&f, &data, &UpdateParams { epsilon: e1, ..Default::default() }).unwrap();
        let large = average_then_update(&f, &data, &UpdateParams { epsilon: e1 + de, ..Default::default() }).unwrap();
        for p in &probes {
            if family_contains(&small, p).unwrap() {
                prop_assert!(family_contains(&large, p).unwrap());
            }
        }
    }

    #[test]
    fn meu_keeps_a_tied_incumbent(seed in any::<u64>(), d in 2usize..4, k in 1usize..3, m in 1usize..4) {
        let r = &mut rng(seed);
        let (f, _) = random_family(d, r);
        let acts: Vec<Act> = (0..m)
            .map(|_| Act::new(d, k, (0..d.pow(k as u32)).map(|_| r.random::<f64>()).collect()).unwrap())
            .collect();
        let h = future_hull(&f, 7, k).unwrap();
        let first = meu_choice(&DecisionProblem::new(acts.clone(), 7).unwrap(), &h, None).unwrap();
        let mut with_copy = acts.clone();
        with_copy.push(acts[first].clone());
        let dp = DecisionProblem::new(with_copy, 7).unwrap();
        prop_assert_eq!(meu_choice(&dp, &h, Some(m)).unwrap(), m);
        prop_assert_eq!(meu_choice(&dp, &h, None).unwrap(), first);
    }

    #[test]
    fn maxmin_value_is_below_every_member_payoff(seed in any::<u64>(), d in 2usize..4, k in 1usize..3, origin in 0usize..9) {
        let r = &mut rng(seed);
        let (f, probes) = random_family(d, r);
        let act = Act::new(d, k, (0..d.pow(k as u32)).map(|_| r.random::<f64>()).collect()).unwrap();
        let v = min_expected_utility(&act, &future_hull(&f, origin, k).unwrap()).unwrap();
        for p in probes.iter().filter(|p| family_contains(&f, p).unwrap()) {
            prop_assert!(v <= objective_payoff(&act, p, origin).unwrap() + 1e-12);
        }
        // A lone box family takes the rectangular path.
        let DgpFamily::Union(branches) = &f else { unreachable!() };
        let DgpFamily::Box(bf) = &branches[1] else { unreachable!() };
        let rect = min_expected_utility(&act, &future_hull(&branches[1], origin, k).unwrap()).unwrap();
        for _ in 0..4 {
            prop_assert!(rect <= objective_payoff(&act, &member_of(bf, r), origin).unwrap() + 1e-12);
        }
    }

    #[test]
    fn pooled_covariance_orders_the_quadratic_forms(seed in any::<u64>(), d in 2usize..6, n in 1usize..40) {
        let r = &mut rng(seed);
        let p = process(d, 0.3, r);
        let pooled = multinomial_covariance(&p.average_sample_marginals(n).unwrap());
        let avg = average_covariance(&p, n).unwrap();
        let x: Vec<f64> = (0..d - 1).map(|_| r.random_range(-1.0..1.0)).collect();
        let a = inverse_quadratic_form(&pooled, &x).unwrap();
        let b = inverse_quadratic_form(&avg, &x).unwrap();
        prop_assert!(a <= b * (1.0 + 1e-9) + 1e-12, "{} > {}", a, b);
    }

    #[test]
    fn covariance_eigenvalue_is_at_least_the_product_of_probabilities(seed in any::<u64>(), d in 2usize..8) {
        let m = marginal(d, 0.0, &mut rng(seed));
        let prod: f64 = m.probs().iter().product();
        prop_assert!(multinomial_covariance(&m).min_eigenvalue() >= prod - 1e-12);
    }

    #[test]
    fn chi_square_quantile_is_monotone(df in 1usize..12, a in 0.001f64..0.9, da in 0.001f64..0.09) {
        let q = chi_square_quantile(df, a).unwrap();
        prop_assert!(chi_square_quantile(df, a + da).unwrap() < q);
        prop_assert!(chi_square_quantile(df + 1, a).unwrap() > q);
    }

    #[test]
    fn ml_prediction_sits_inside_atu_prediction(phi in 0.0f64..=1.0, delta in 0.0f64..0.99) {
        let ml = bern_prediction_ml(phi, delta).unwrap();
        let atu = bern_prediction_asymptotic(phi, delta).unwrap();
        prop_assert!(ml.is_subset_of(&atu), "{:?} vs {:?}", ml, atu);
    }

    #[test]
    fn finite_theta_set_shrinks_toward_the_asymptotic_one(
        n in 10usize..500, frac in 0.0f64..=1.0, delta in 0.0f64..0.9, a1 in 0.01f64..0.5, da in 0.0f64..0.49,
    ) {
        let ones = (frac * n as f64).round() as usize;
        let data = SampleData::binary_with_count(n, ones);
        let wide = bern_theta_finite(&data, delta, a1).unwrap().theta;
        let narrow = bern_theta_finite(&data, delta, a1 + da).unwrap().theta;
        let asym = bern_theta_asymptotic(ones as f64 / n as f64, delta).unwrap();
        prop_assert!(narrow.is_subset_of(&wide));
        prop_assert!(asym.is_subset_of(&narrow));
    }

    #[test]
    fn binary_acceptance_region_inverts_to_wilson(n in 20usize..2000, frac in 0.1f64..0.9, alpha in 0.01f64..0.3) {
        let phi1 = (frac * n as f64).round() / n as f64;
        let phi = Marginal::bernoulli(phi1).unwrap();
        let accepts = |p: f64| acceptance_test(&phi, &Marginal::bernoulli(p).unwrap(), n, alpha).unwrap();
        let lo = bisect(0.0, phi1, accepts);
        let hi = bisect(phi1, 1.0, |p| !accepts(p));
        let (wl, wu) = wilson_interval(phi1, n, alpha).unwrap();
        prop_assert!((lo - wl).abs() < 1e-9 && (hi - wu).abs() < 1e-9, "[{}, {}] vs [{}, {}]", lo, hi, wl, wu);
    }
}

#[test]
fn smallest_probability_does_not_bound_the_covariance_eigenvalue() {
    let m = Marginal::bernoulli(0.3).unwrap();
    let lambda = multinomial_covariance(&m).min_eigenvalue();
    assert!((lambda - 0.21).abs() < 1e-15);
    assert!(lambda < m.min_prob());
}
