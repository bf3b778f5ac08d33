//! Questions about the set of achievable averages `sum_c w_c q_c` of a box family
//! over the first `n` experiments: does it meet a sup-norm ball, an acceptance
//! ellipsoid or a rectangle? Binary cases are closed form; otherwise LPs and a
//! Frank-Wolfe search on the (convex) Pearson form.

use std::collections::BTreeMap;

use crate::dgp::family::{BoxFamily, MarginalBox, SampleConstraint};
use crate::dgp::sample::SampleData;
use crate::dgp::Marginal;
use crate::error::{Error, Result};
use crate::lp::{average_meets_box, ball_slack, WeightedBox};
use crate::stats::{bonferroni_intervals, chi_square_quantile};

const FW_MAX_ITER: usize = 5_000;
const LINE_SEARCH_STEPS: usize = 80;

#[derive(Debug, Clone)]
pub(crate) struct Class {
    pub weight: f64,
    pub bx: MarginalBox,
}

/// Experiments `1..=n` grouped by cycle slot (and pinned outcome, for ML data).
pub(crate) fn classes(fam: &BoxFamily, n: usize, pins: Option<&SampleData>) -> Vec<Class> {
    let period = fam.cycle().len();
    let mut counts: BTreeMap<(usize, Option<usize>), usize> = BTreeMap::new();
    let pinned = pins.map_or(0, |d| d.len().min(n));
    if let Some(d) = pins {
        for (k, &o) in d.outcomes()[..pinned].iter().enumerate() {
            *counts.entry((k % period, Some(o))).or_default() += 1;
        }
    }
    let rest = n - pinned;
    for s in 0..period {
        // experiments pinned+1..=n falling in slot s
        let first = (s + period - pinned % period) % period;
        let w = if first < rest {
            (rest - first - 1) / period + 1
        } else {
            0
        };
        if w > 0 {
            *counts.entry((s, None)).or_default() += w;
        }
    }
    counts
        .into_iter()
        .map(|((s, pin), w)| {
            let b = &fam.cycle()[s];
            Class {
                weight: w as f64 / n as f64,
                bx: pin.map_or_else(|| b.clone(), |o| b.pinned(o)),
            }
        })
        .collect()
}

fn weighted(classes: &[Class]) -> Vec<WeightedBox<'_>> {
    classes
        .iter()
        .map(|c| WeightedBox {
            weight: c.weight,
            lo: c.bx.lo(),
            hi: c.bx.hi(),
        })
        .collect()
}

/// Range of the average probability of outcome `j`.
pub(crate) fn average_range(classes: &[Class], j: usize) -> (f64, f64) {
    classes.iter().fold((0.0, 0.0), |(a, b), c| {
        let (l, h) = c.bx.component_range(j);
        (a + c.weight * l, b + c.weight * h)
    })
}

fn interval_gap(range: (f64, f64), x: f64) -> f64 {
    if x < range.0 {
        range.0 - x
    } else if x > range.1 {
        x - range.1
    } else {
        0.0
    }
}

/// Some achievable average strictly within `radius` (sup norm) of `center`?
pub(crate) fn ball_reachable(classes: &[Class], center: &Marginal, radius: f64) -> Result<bool> {
    if center.d() == 2 {
        Ok(interval_gap(average_range(classes, 1), center.prob(1)) < radius)
    } else {
        ball_reachable_lp(classes, center, radius)
    }
}

pub(crate) fn ball_reachable_lp(classes: &[Class], center: &Marginal, radius: f64) -> Result<bool> {
    Ok(ball_slack(&weighted(classes), center.probs(), radius)? > 0.0)
}

/// Some achievable average inside the rectangle `[lo, hi]` on the reduced components?
pub(crate) fn rect_reachable(classes: &[Class], lo: &[f64], hi: &[f64]) -> Result<bool> {
    if lo.len() == 1 {
        let r = average_range(classes, 0);
        Ok(r.0 <= hi[0] + 1e-12 && r.1 >= lo[0] - 1e-12)
    } else {
        average_meets_box(&weighted(classes), lo, hi)
    }
}

/// Some achievable average accepted by the i.i.d. ellipsoid test on `phi`?
pub(crate) fn ellipsoid_reachable(
    classes: &[Class],
    phi: &Marginal,
    n: usize,
    alpha: f64,
) -> Result<bool> {
    let q = chi_square_quantile(phi.d() - 1, alpha)?;
    if phi.d() == 2 {
        // The accepted set of p1 is the score interval with z^2 = q.
        let (lo, hi) = crate::stats::wilson::wilson_with_z(phi.prob(1), n, q.sqrt());
        let r = average_range(classes, 1);
        return Ok(r.0 <= hi + 1e-12 && r.1 >= lo - 1e-12);
    }
    pearson_reachable(classes, phi, q / n as f64)
}

fn pearson(phi: &[f64], x: &[f64]) -> f64 {
    let mut g = -1.0;
    for (f, v) in phi.iter().zip(x) {
        if *f > 0.0 {
            if *v <= 0.0 {
                return f64::INFINITY;
            }
            g += f * f / v;
        }
    }
    g.max(0.0)
}

/// Frank-Wolfe on `g(x) = sum_j phi_j^2 / x_j - 1` over the achievable averages.
/// Stops as soon as `g(x) <= threshold` or the duality bound exceeds it.
pub(crate) fn pearson_reachable(classes: &[Class], phi: &Marginal, threshold: f64) -> Result<bool> {
    let phi = phi.probs();
    let d = phi.len();
    let combine = |pts: &[Vec<f64>]| -> Vec<f64> {
        let mut x = vec![0.0; d];
        for (c, p) in classes.iter().zip(pts) {
            x.iter_mut().zip(p).for_each(|(a, b)| *a += c.weight * b);
        }
        x
    };
    let mut x = combine(
        &classes
            .iter()
            .map(|c| c.bx.interior_point())
            .collect::<Vec<_>>(),
    );
    if !pearson(phi, &x).is_finite() {
        return Ok(false);
    }
    for _ in 0..FW_MAX_ITER {
        let g = pearson(phi, &x);
        if g <= threshold {
            return Ok(true);
        }
        let grad: Vec<f64> = phi
            .iter()
            .zip(&x)
            .map(|(f, v)| if *f > 0.0 { -f * f / (v * v) } else { 0.0 })
            .collect();
        let s = combine(
            &classes
                .iter()
                .map(|c| c.bx.argmin_linear(&grad))
                .collect::<Vec<_>>(),
        );
        let gap: f64 = grad
            .iter()
            .zip(x.iter().zip(&s))
            .map(|(g, (a, b))| g * (a - b))
            .sum();
        if g - gap > threshold {
            return Ok(false);
        }
        // golden-section line search on the convex restriction
        let at = |t: f64| -> f64 {
            let y: Vec<f64> = x.iter().zip(&s).map(|(a, b)| a + t * (b - a)).collect();
            pearson(phi, &y)
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        let r = 0.618_033_988_749_894_9;
        for _ in 0..LINE_SEARCH_STEPS {
            let m1 = hi - r * (hi - lo);
            let m2 = lo + r * (hi - lo);
            if at(m1) <= at(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let t = 0.5 * (lo + hi);
        if at(t) >= g {
            // no progress at working precision; the bound decides
            return Ok(g - gap <= threshold);
        }
        x.iter_mut().zip(&s).for_each(|(a, b)| *a += t * (*b - *a));
    }
    Ok(pearson(phi, &x) <= threshold)
}

pub(crate) fn box_family_feasible(fam: &BoxFamily) -> Result<bool> {
    let mut pins: Option<&SampleData> = None;
    let mut average: Option<&SampleConstraint> = None;
    for c in fam.constraints() {
        match c {
            SampleConstraint::MaxLikelihood { data } => {
                if pins.is_some_and(|p| p != data) {
                    return Err(Error::UnsupportedFamily(
                        "two different likelihood constraints".into(),
                    ));
                }
                pins = Some(data);
            }
            other => {
                if average.is_some() {
                    return Err(Error::UnsupportedFamily(
                        "more than one average constraint".into(),
                    ));
                }
                average = Some(other);
            }
        }
    }
    let Some(avg) = average else { return Ok(true) };
    let n = avg.n();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let cls = classes(fam, n, pins);
    match avg {
        SampleConstraint::AverageBall { center, radius, .. } => {
            ball_reachable(&cls, center, *radius)
        }
        SampleConstraint::Acceptance {
            phi,
            alpha,
            bonferroni: false,
            ..
        } => ellipsoid_reachable(&cls, phi, n, *alpha),
        SampleConstraint::Acceptance {
            phi,
            alpha,
            bonferroni: true,
            ..
        } => {
            let iv = bonferroni_intervals(phi, n, *alpha)?;
            let lo: Vec<f64> = iv.iter().map(|p| p.0).collect();
            let hi: Vec<f64> = iv.iter().map(|p| p.1).collect();
            rect_reachable(&cls, &lo, &hi)
        }
        SampleConstraint::MaxLikelihood { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern_family(cycle: &[(f64, f64)]) -> BoxFamily {
        BoxFamily::new(
            cycle
                .iter()
                .map(|&(a, b)| MarginalBox::bernoulli(a, b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn class_weights_cover_all_experiments() {
        let fam = bern_family(&[(0.1, 0.2), (0.5, 0.6), (0.8, 0.9)]);
        for n in 1..20 {
            for m in [0, 1, 4, n] {
                let data = SampleData::binary_with_count(m.min(n), m.min(n) / 2);
                let c = classes(&fam, n, Some(&data));
                let total: f64 = c.iter().map(|c| c.weight).sum();
                assert!((total - 1.0).abs() < 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn ball_closed_form_matches_lp() {
        let fam = bern_family(&[(0.6, 1.0)]);
        let cls = classes(&fam, 10, None);
        for &(c, r) in &[
            (0.8, 0.05),
            (1.0 / 3.0, 0.05),
            (0.57, 0.05),
            (0.52, 0.05),
            (0.6, 0.01),
        ] {
            let center = Marginal::bernoulli(c).unwrap();
            assert_eq!(
                ball_reachable(&cls, &center, r).unwrap(),
                ball_reachable_lp(&cls, &center, r).unwrap(),
                "c={c}"
            );
        }
    }

    #[test]
    fn pearson_matches_binary_closed_form() {
        let fam = bern_family(&[(0.6, 1.0), (0.2, 0.3)]);
        let cls = classes(&fam, 100, None);
        for &f in &[0.1, 0.25, 0.38, 0.42, 0.5, 0.7, 0.9] {
            let phi = Marginal::bernoulli(f).unwrap();
            let q = chi_square_quantile(1, 0.05).unwrap();
            assert_eq!(
                ellipsoid_reachable(&cls, &phi, 100, 0.05).unwrap(),
                pearson_reachable(&cls, &phi, q / 100.0).unwrap(),
                "phi={f}"
            );
        }
    }

    #[test]
    fn pearson_three_outcomes_brute_force() {
        // single class: achievable averages are the box itself; grid oracle
        let b = MarginalBox::new(vec![0.5, 0.0, 0.0], vec![0.8, 0.4, 0.4]).unwrap();
        let cls = vec![Class {
            weight: 1.0,
            bx: b.clone(),
        }];
        for phi in [
            [0.4, 0.3, 0.3],
            [0.3, 0.3, 0.4],
            [0.6, 0.2, 0.2],
            [0.45, 0.1, 0.45],
        ] {
            let m = Marginal::new(phi.to_vec()).unwrap();
            let thr = 0.01;
            let mut best = f64::INFINITY;
            let steps = 400;
            for i in 0..=steps {
                for j in 0..=steps {
                    let x0 = 0.5 + 0.3 * i as f64 / steps as f64;
                    let x1 = 0.4 * j as f64 / steps as f64;
                    let x2 = 1.0 - x0 - x1;
                    if (0.0..=0.4).contains(&x2) {
                        best = best.min(pearson(&phi, &[x0, x1, x2]));
                    }
                }
            }
            if (best - thr).abs() > 1e-3 {
                assert_eq!(
                    pearson_reachable(&cls, &m, thr).unwrap(),
                    best <= thr,
                    "phi={phi:?} best={best}"
                );
            }
        }
    }

    #[test]
    fn rect_binary_matches_lp() {
        let fam = bern_family(&[(0.6, 1.0), (0.0, 0.1)]);
        let cls = classes(&fam, 7, None);
        for &(lo, hi) in &[(0.1, 0.2), (0.5, 0.6), (0.66, 0.9), (0.0, 0.05)] {
            let w = weighted(&cls);
            assert_eq!(
                rect_reachable(&cls, &[lo], &[hi]).unwrap(),
                average_meets_box(&w, &[lo], &[hi]).unwrap()
            );
        }
    }
}
