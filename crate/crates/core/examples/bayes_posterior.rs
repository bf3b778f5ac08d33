//! Bayesian updating under a uniform prior over two box branches. Data from
//! `(0.6)^inf`, which only the second branch holds, still push the posterior
//! toward the first.

use robust_update::dgp::{sample, IndependentDgp, SampleData};
use robust_update::sim::scenario::two_box_family;
use robust_update::update::bayesian_posterior;

fn main() -> robust_update::Result<()> {
    let family = two_box_family();
    let prior = bayesian_posterior(&family, &SampleData::binary(&[])?)?;
    println!(
        "prior masses {:?}, predictive P(1) = {:.4}",
        prior.masses,
        prior.predictive().prob(1)
    );

    let truth = IndependentDgp::bernoulli_iid(0.6)?;
    for n in [10, 100, 300, 1000, 3000] {
        let post = bayesian_posterior(&family, &sample(&truth, n, 11))?;
        println!(
            "N = {n:>4}: masses [{:.4}, {:.4}], predictive P(1) = {:.4}",
            post.masses[0],
            post.masses[1],
            post.predictive().prob(1)
        );
    }
    Ok(())
}
