#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robust_update::dgp::{IndependentDgp, Marginal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random marginal with every component at least `floor / d`-ish; exact unit sum.
pub fn marginal(d: usize, floor: f64, rng: &mut ChaCha8Rng) -> Marginal {
    let raw: Vec<f64> = (0..d)
        .map(|_| floor + -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let s: f64 = raw.iter().sum();
    let mut p: Vec<f64> = raw.iter().map(|x| x / s).collect();
    let head: f64 = p[..d - 1].iter().sum();
    p[d - 1] = 1.0 - head;
    Marginal::new(p).unwrap()
}

/// Random process: optional prefix of up to 3 marginals, then an i.i.d. or periodic tail.
pub fn process(d: usize, floor: f64, rng: &mut ChaCha8Rng) -> IndependentDgp {
    let prefix = (0..rng.random_range(0..=3))
        .map(|_| marginal(d, floor, rng))
        .collect();
    let period = rng.random_range(1..=5);
    let cycle: Vec<Marginal> = (0..period).map(|_| marginal(d, floor, rng)).collect();
    let tail = if period == 1 {
        robust_update::dgp::Tail::Iid(cycle[0].clone())
    } else {
        robust_update::dgp::Tail::Periodic(cycle)
    };
    IndependentDgp::new(prefix, tail).unwrap()
}

pub fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Smallest `p` in `[lo, hi]` with `pred(p)` true, for a predicate false below a threshold.
pub fn bisect(mut lo: f64, mut hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
