//! Maximum likelihood versus average-then-update on the two-branch family
//! `[0.6, 1]^inf  U  {(1/3)^inf}` with data drawn from `(1/3)^inf`.

use robust_update::decision::{
    accommodates, data_driven_choice, data_free_choice, objective_payoff,
};
use robust_update::dgp::{sample, IndependentDgp};
use robust_update::sim::scenario::{illustrative_family, illustrative_problem};
use robust_update::update::{average_then_update, max_likelihood_update, UpdateParams};

fn main() -> robust_update::Result<()> {
    let truth = IndependentDgp::bernoulli_iid(1.0 / 3.0)?;
    let initial = illustrative_family();
    let n = 500;
    let problem = illustrative_problem(n);
    let free = data_free_choice(&problem, &initial)?;
    println!(
        "data-free act {free}, payoff {:.4}",
        objective_payoff(problem.act(free), &truth, n)?
    );

    // ML keeps the truth only when the share of ones is below about 0.3175.
    for seed in 1..=6 {
        let data = sample(&truth, n, seed);
        let share = data.counts(2)[1] as f64 / n as f64;
        let atu = average_then_update(&initial, &data, &UpdateParams::default())?;
        let ml = max_likelihood_update(&initial, &data)?;
        for (name, updated) in [("atu", &atu), ("ml", &ml)] {
            let act = data_driven_choice(&problem, updated, free)?;
            println!(
                "seed {seed}, share {share:.3}, {name:>3}: accommodates {:?}, act {act}, payoff {:.4}",
                accommodates(updated, &truth, n, 1)?,
                objective_payoff(problem.act(act), &truth, n)?
            );
        }
    }
    Ok(())
}
