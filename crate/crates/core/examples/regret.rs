//! Minimax regret can turn a truth-preserving update against the decision maker.

use robust_update::decision::{
    future_hull, max_regrets, minimax_regret_choice, objective_payoff, Act, DecisionProblem,
};
use robust_update::dgp::{BoxFamily, DgpFamily, IndependentDgp};

fn main() -> robust_update::Result<()> {
    let problem =
        DecisionProblem::new(vec![Act::bet_on(2, 1)?, Act::constant(2, 1, 2.0 / 3.0)?], 0)?;
    let before = future_hull(&DgpFamily::Box(BoxFamily::bernoulli(0.0, 1.0)?), 0, 1)?;
    let after = future_hull(&DgpFamily::Box(BoxFamily::bernoulli(0.6, 1.0)?), 0, 1)?;
    let (a, b) = (
        minimax_regret_choice(&problem, &before)?,
        minimax_regret_choice(&problem, &after)?,
    );
    println!(
        "regrets before {:?} -> act {a}; after {:?} -> act {b}",
        max_regrets(&problem, &before)?,
        max_regrets(&problem, &after)?
    );
    let truth = IndependentDgp::bernoulli_iid(0.62)?;
    println!(
        "under (0.62)^inf: before {:.4}, after {:.4}",
        objective_payoff(problem.act(a), &truth, 0)?,
        objective_payoff(problem.act(b), &truth, 0)?
    );
    Ok(())
}
