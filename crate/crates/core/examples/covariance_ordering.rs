//! For a non-identical process, the covariance at the averaged marginal exceeds
//! the average covariance, so the i.i.d. test is conservative.

use robust_update::dgp::{IndependentDgp, Marginal};
use robust_update::stats::{
    average_covariance, gram_difference, inverse_quadratic_form, multinomial_covariance, psd_check,
};

fn main() -> robust_update::Result<()> {
    let p = IndependentDgp::periodic(vec![
        Marginal::new(vec![0.7, 0.2, 0.1])?,
        Marginal::new(vec![0.1, 0.3, 0.6])?,
    ])?;
    let n = 10;
    let pooled = multinomial_covariance(&p.average_sample_marginals(n)?);
    let avg = average_covariance(&p, n)?;
    let diff = gram_difference(&p, n)?;
    println!(
        "pooled {:?}\naverage {:?}\ndifference {:?}",
        pooled.rows(),
        avg.rows(),
        diff.rows()
    );
    println!(
        "difference PSD: {} (min eigenvalue {:.6})",
        psd_check(&diff),
        diff.min_eigenvalue()
    );
    let x = [0.03, -0.02];
    println!(
        "quadratic forms: pooled {:.4} <= average {:.4}",
        inverse_quadratic_form(&pooled, &x)?,
        inverse_quadratic_form(&avg, &x)?
    );
    Ok(())
}
