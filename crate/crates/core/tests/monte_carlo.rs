//! Seeded Monte Carlo checks of the large-sample behaviour the updating rules
//! rely on. Frequencies are compared with three binomial standard errors of slack
//! where a rate, not a certainty, is claimed.

mod common;

use common::{binomial_se, process, rng};
use rand::RngExt;
use robust_update::dgp::{
    sample_with, stream_rng, DgpFamily, IndependentDgp, Marginal, SampleData,
};
use robust_update::models::{
    bern_theta_asymptotic, gauss_sample_with, BernoulliNuisanceModel, GaussianSignalsModel,
};
use robust_update::stats::{
    acceptance_statistic, acceptance_test, bonferroni_test, chi_square_quantile,
};
use robust_update::update::{average_then_update, robust_iid_update, UpdateParams};

const SEED: u64 = 20221105;

fn phi(data: &SampleData, d: usize) -> Marginal {
    let n = data.len() as f64;
    Marginal::new(data.counts(d).iter().map(|&c| c as f64 / n).collect()).unwrap()
}

fn truths(d: usize, count: usize, seed: u64) -> Vec<IndependentDgp> {
    let r = &mut rng(seed);
    (0..count).map(|_| process(d, 0.3, r)).collect()
}

#[test]
fn empirical_distribution_tracks_the_average_marginal() {
    let n = 100_000;
    let (reps, d) = (200, 3);
    let p = IndependentDgp::periodic(vec![
        Marginal::new(vec![0.7, 0.2, 0.1]).unwrap(),
        Marginal::new(vec![0.1, 0.3, 0.6]).unwrap(),
        Marginal::new(vec![0.3, 0.3, 0.4]).unwrap(),
    ])
    .unwrap();
    let avg = p.average_sample_marginals(n).unwrap();
    let close = (0..reps)
        .filter(|&rep| {
            phi(&sample_with(&p, n, &mut stream_rng(SEED, rep)), d).sup_distance(&avg) < 0.01
        })
        .count();
    assert!(close as f64 >= 0.99 * reps as f64, "{close}/{reps}");
}

#[test]
fn atu_keeps_non_identical_truths() {
    let (n, reps, eps) = (2_000, 200, 0.05);
    let params = UpdateParams {
        epsilon: eps,
        ..Default::default()
    };
    for (t, p) in truths(3, 6, 1).into_iter().enumerate() {
        let singleton = DgpFamily::singleton(p.clone());
        let kept = (0..reps)
            .filter(|&rep| {
                let data = sample_with(&p, n, &mut stream_rng(SEED, ((t as u64) << 32) | rep));
                !average_then_update(&singleton, &data, &params)
                    .unwrap()
                    .is_empty()
            })
            .count();
        assert!(
            kept as f64 >= 0.99 * reps as f64,
            "truth {t}: {kept}/{reps}"
        );
    }
}

#[test]
fn robust_iid_test_covers_at_its_level() {
    let (n, reps, alpha) = (2_000, 400, 0.05);
    for bonferroni in [false, true] {
        let params = UpdateParams {
            alpha,
            bonferroni,
            ..Default::default()
        };
        for (t, p) in truths(3, 4, 2).into_iter().enumerate() {
            let singleton = DgpFamily::singleton(p.clone());
            let kept = (0..reps)
                .filter(|&rep| {
                    let data = sample_with(&p, n, &mut stream_rng(SEED, ((t as u64) << 32) | rep));
                    !robust_iid_update(&singleton, &data, &params)
                        .unwrap()
                        .is_empty()
                })
                .count() as f64
                / reps as f64;
            let floor = 1.0 - alpha - 3.0 * binomial_se(1.0 - alpha, reps as usize);
            assert!(
                kept >= floor,
                "truth {t}, bonferroni {bonferroni}: coverage {kept}"
            );
        }
    }
}

#[test]
fn iid_statistic_has_the_chi_square_quantile() {
    let (n, reps) = (2_000, 10_000);
    let p = Marginal::new(vec![0.5, 0.3, 0.2]).unwrap();
    let truth = IndependentDgp::iid(p.clone());
    let mut stats: Vec<f64> = (0..reps)
        .map(|rep| {
            acceptance_statistic(
                &phi(&sample_with(&truth, n, &mut stream_rng(SEED, rep)), 3),
                &p,
                n,
            )
            .unwrap()
        })
        .collect();
    stats.sort_by(f64::total_cmp);
    let q95 = stats[(0.95 * reps as f64) as usize];
    let want = chi_square_quantile(2, 0.05).unwrap();
    assert!((q95 - want).abs() < 0.5, "empirical {q95} vs {want}");
}

#[test]
fn atu_on_the_nuisance_model_matches_the_theta_set() {
    let (delta, eps) = (0.2, 0.02);
    let model = BernoulliNuisanceModel::new(delta).unwrap();
    let params = UpdateParams {
        epsilon: eps,
        ..Default::default()
    };
    let r = &mut rng(3);
    for _ in 0..20 {
        let n = r.random_range(50..400);
        let data = SampleData::binary_with_count(n, r.random_range(0..=n));
        let phi1 = data.counts(2)[1] as f64 / n as f64;
        let limit = bern_theta_asymptotic(phi1, delta).unwrap();
        for i in 0..=200 {
            let theta = i as f64 / 200.0;
            let kept = !average_then_update(
                &DgpFamily::Box(model.family(theta).unwrap()),
                &data,
                &params,
            )
            .unwrap()
            .is_empty();
            // Kept iff the range of average frequencies comes within eps of phi.
            let (lo, hi) = model.marginal_range(theta);
            let gap = (lo - phi1).max(phi1 - hi.min(1.0)).max(0.0);
            assert_eq!(kept, gap < eps, "theta {theta}, phi {phi1}");
            if limit.contains_closed(theta) {
                assert!(kept);
            }
        }
    }
}

#[test]
fn gaussian_misses_fall_as_epsilon_grows() {
    let (theta, n, reps) = (0.7, 400, 2_000);
    let sigmas = [0.5, 1.0, 2.0];
    let eps = [0.05, 0.1, 0.2, 0.4];
    let mut misses = [0usize; 4];
    for rep in 0..reps {
        let xs = gauss_sample_with(theta, &sigmas, n, &mut stream_rng(SEED, rep)).unwrap();
        let hit: Vec<bool> = eps
            .iter()
            .map(|&e| {
                GaussianSignalsModel::new(0.5, 2.0, e)
                    .unwrap()
                    .states(&xs)
                    .unwrap()
                    .contains(theta)
            })
            .collect();
        // Pathwise nesting, not just rates.
        assert!(hit.windows(2).all(|w| !w[0] || w[1]));
        for (m, h) in misses.iter_mut().zip(&hit) {
            *m += usize::from(!h);
        }
    }
    assert!(misses.windows(2).all(|w| w[0] >= w[1]), "{misses:?}");
    // sd of the mean is sqrt(mean sigma^2 / n) = 0.0661; eps = 0.4 is six of them.
    assert_eq!(misses[3], 0);
}

#[test]
fn gaussian_sample_variance_is_the_average_variance() {
    let sigmas = [0.5, 1.0, 2.0];
    let n = 300_000;
    let xs = gauss_sample_with(0.0, &sigmas, n, &mut stream_rng(SEED, 0)).unwrap();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let want = sigmas.iter().map(|s| s * s).sum::<f64>() / 3.0;
    assert!((var / want - 1.0).abs() < 0.02, "{var} vs {want}");
}

#[test]
fn bonferroni_accepts_the_truth_at_least_as_often_as_the_ellipsoid() {
    let (n, reps, alpha) = (500, 10_000, 0.05);
    let p = Marginal::new(vec![0.5, 0.3, 0.2]).unwrap();
    let truth = IndependentDgp::iid(p.clone());
    let (mut ell, mut bon) = (0usize, 0usize);
    for rep in 0..reps {
        let f = phi(
            &sample_with(&truth, n, &mut stream_rng(SEED, rep as u64)),
            3,
        );
        ell += usize::from(acceptance_test(&f, &p, n, alpha).unwrap());
        bon += usize::from(bonferroni_test(&f, &p, n, alpha).unwrap());
    }
    let (e, b) = (ell as f64 / reps as f64, bon as f64 / reps as f64);
    assert!(
        b >= e - 3.0 * binomial_se(e, reps),
        "bonferroni {b} vs ellipsoid {e}"
    );
    assert!(
        b >= 1.0 - alpha - 3.0 * binomial_se(1.0 - alpha, reps),
        "{b}"
    );
}
