use crate::decision::act::{Act, DecisionProblem, PAYOFF_TOL};
use crate::decision::hull::{future_hull, min_expected_utility, MarginalHull, DEFAULT_HULL_CAP};
use crate::dgp::{DgpFamily, IndependentDgp};
use crate::error::{Error, Result};

/// Index of the act with the largest worst-case expected payoff. Ties go to
/// `incumbent` when it is among the best, otherwise to the lowest index.
pub fn meu_choice(
    d: &DecisionProblem,
    h: &MarginalHull,
    incumbent: Option<usize>,
) -> Result<usize> {
    let values = d
        .acts()
        .iter()
        .map(|f| min_expected_utility(f, h))
        .collect::<Result<Vec<f64>>>()?;
    Ok(argmax_with_incumbent(&values, incumbent))
}

pub(crate) fn argmax_with_incumbent(values: &[f64], incumbent: Option<usize>) -> usize {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if let Some(i) = incumbent {
        if values.get(i).is_some_and(|v| *v >= best - PAYOFF_TOL) {
            return i;
        }
    }
    values
        .iter()
        .position(|v| *v >= best - PAYOFF_TOL)
        .unwrap_or(0)
}

/// Data-free choice: MEU over the initial family's hull.
pub fn data_free_choice(d: &DecisionProblem, initial: &DgpFamily) -> Result<usize> {
    meu_choice(d, &future_hull(initial, d.origin(), d.horizon())?, None)
}

/// Data-driven choice: MEU over the updated family, ties to the data-free act.
/// An empty updated family ranks every act equally, so the data-free act stands.
pub fn data_driven_choice(
    d: &DecisionProblem,
    updated: &DgpFamily,
    data_free: usize,
) -> Result<usize> {
    if updated.is_empty() {
        return Ok(data_free);
    }
    meu_choice(
        d,
        &future_hull(updated, d.origin(), d.horizon())?,
        Some(data_free),
    )
}

/// Expected payoff of `f` under the truth's marginals for experiments `n+1..=n+K`.
pub fn objective_payoff(f: &Act, pstar: &IndependentDgp, n: usize) -> Result<f64> {
    if pstar.d() != f.d() {
        return Err(Error::DimensionMismatch {
            expected: f.d(),
            got: pstar.d(),
        });
    }
    Ok(f.expect(&pstar.joint_future(n, f.horizon())))
}

/// Worst-case payoff, over the initial family, of the data-free choice.
pub fn certainty_equivalent(d: &DecisionProblem, initial: &DgpFamily, n: usize) -> Result<f64> {
    let h = future_hull(initial, n, d.horizon())?;
    let c = meu_choice(d, &h, None)?;
    min_expected_utility(d.act(c), &h)
}

/// Maximum expected regret of each act over the hull, where the regret in a
/// joint outcome is the best payoff any act of `d` offers there minus the act's own.
pub fn max_regrets(d: &DecisionProblem, h: &MarginalHull) -> Result<Vec<f64>> {
    if d.horizon() != h.horizon() || d.d() != h.d() {
        return Err(Error::InvalidProblem(
            "acts and hull disagree on horizon or outcome count".into(),
        ));
    }
    let points = h.points(DEFAULT_HULL_CAP)?;
    let size = d.act(0).payoffs().len();
    let best: Vec<f64> = (0..size)
        .map(|w| {
            d.acts()
                .iter()
                .map(|a| a.payoffs()[w])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    Ok(d.acts()
        .iter()
        .map(|a| {
            let loss: Vec<f64> = best.iter().zip(a.payoffs()).map(|(b, u)| b - u).collect();
            points
                .iter()
                .map(|p| p.iter().zip(&loss).map(|(q, l)| q * l).sum::<f64>())
                .fold(0.0, f64::max)
        })
        .collect())
}

/// Act with the smallest maximum regret; ties to the lowest index.
pub fn minimax_regret_choice(d: &DecisionProblem, h: &MarginalHull) -> Result<usize> {
    let r = max_regrets(d, h)?;
    let neg: Vec<f64> = r.iter().map(|v| -v).collect();
    Ok(argmax_with_incumbent(&neg, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgp::{BoxFamily, MarginalBox};

    fn interval(a: f64, b: f64) -> MarginalHull {
        MarginalHull::Rect {
            boxes: vec![MarginalBox::bernoulli(a, b).unwrap()],
        }
    }

    fn personalized_vs_standard() -> DecisionProblem {
        DecisionProblem::basic(Act::bet_on(2, 1).unwrap(), 0.5, 0).unwrap()
    }

    #[test]
    fn illustrative_choices() {
        let d = personalized_vs_standard();
        let initial = DgpFamily::union(vec![
            DgpFamily::Box(BoxFamily::bernoulli(0.6, 1.0).unwrap()),
            DgpFamily::singleton(IndependentDgp::bernoulli_iid(1.0 / 3.0).unwrap()),
        ])
        .unwrap();
        assert_eq!(data_free_choice(&d, &initial).unwrap(), 1);
        assert_eq!(meu_choice(&d, &interval(0.6, 1.0), Some(1)).unwrap(), 0);
        assert!((certainty_equivalent(&d, &initial, 0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn incumbent_wins_ties() {
        let d = DecisionProblem::new(
            vec![
                Act::constant(2, 1, 0.5).unwrap(),
                Act::constant(2, 1, 0.5).unwrap(),
            ],
            0,
        )
        .unwrap();
        assert_eq!(meu_choice(&d, &interval(0.2, 0.3), Some(1)).unwrap(), 1);
        assert_eq!(meu_choice(&d, &interval(0.2, 0.3), None).unwrap(), 0);
    }

    #[test]
    fn objective_payoffs() {
        let pstar = IndependentDgp::bernoulli_iid(1.0 / 3.0).unwrap();
        assert!(
            (objective_payoff(&Act::bet_on(2, 1).unwrap(), &pstar, 12).unwrap() - 1.0 / 3.0).abs()
                < 1e-15
        );
        let p = IndependentDgp::bernoulli_periodic(&[0.5, 0.8]).unwrap();
        let both = Act::new(2, 2, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((objective_payoff(&both, &p, 0).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn single_act_certainty_equivalent() {
        let d = DecisionProblem::new(vec![Act::bet_on(2, 1).unwrap()], 0).unwrap();
        let f = DgpFamily::Box(BoxFamily::bernoulli(0.3, 0.7).unwrap());
        assert!((certainty_equivalent(&d, &f, 4).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn regret_values() {
        let d = DecisionProblem::basic(Act::bet_on(2, 1).unwrap(), 2.0 / 3.0, 0).unwrap();
        let r = max_regrets(&d, &interval(0.0, 1.0)).unwrap();
        assert!((r[0] - 2.0 / 3.0).abs() < 1e-15 && (r[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(minimax_regret_choice(&d, &interval(0.0, 1.0)).unwrap(), 1);
        let r = max_regrets(&d, &interval(0.6, 1.0)).unwrap();
        assert!((r[0] - 4.0 / 15.0).abs() < 1e-15 && (r[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(minimax_regret_choice(&d, &interval(0.6, 1.0)).unwrap(), 0);
    }
}
