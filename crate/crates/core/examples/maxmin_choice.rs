//! Hulls of future marginals, maxmin expected utility over two experiments, and
//! minimax regret.

use robust_update::decision::{
    future_hull, max_regrets, meu_choice, min_expected_utility, minimax_regret_choice, Act,
    DecisionProblem,
};
use robust_update::dgp::{BoxFamily, DgpFamily, IndependentDgp};

fn main() -> robust_update::Result<()> {
    let boxed = DgpFamily::Box(BoxFamily::bernoulli(0.4, 0.7)?);
    let mixed = DgpFamily::union(vec![
        boxed.clone(),
        DgpFamily::singleton(IndependentDgp::bernoulli_iid(0.2)?),
    ])?;

    // Joint outcomes over two experiments, ordered 00, 01, 10, 11.
    let both_ones = Act::new(2, 2, vec![0.0, 0.0, 0.0, 1.0])?;
    let any_one = Act::new(2, 2, vec![0.0, 1.0, 1.0, 1.0])?;
    let safe = Act::constant(2, 2, 0.6)?;
    let problem = DecisionProblem::new(vec![both_ones, any_one, safe], 10)?;

    for (name, f) in [("box", &boxed), ("box + (0.2)^inf", &mixed)] {
        let h = future_hull(f, problem.origin(), problem.horizon())?;
        let values: Vec<String> = problem
            .acts()
            .iter()
            .map(|a| min_expected_utility(a, &h).map(|v| format!("{v:.4}")))
            .collect::<robust_update::Result<_>>()?;
        println!(
            "{name}: worst-case values [{}], maxmin act {}",
            values.join(", "),
            meu_choice(&problem, &h, None)?
        );
        let regrets: Vec<String> = max_regrets(&problem, &h)?
            .iter()
            .map(|r| format!("{r:.4}"))
            .collect();
        println!(
            "{name}: max regrets [{}], minimax-regret act {}",
            regrets.join(", "),
            minimax_regret_choice(&problem, &h)?
        );
    }
    Ok(())
}
