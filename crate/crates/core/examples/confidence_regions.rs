//! Chi-square and normal quantiles, the i.i.d. ellipsoid test, Bonferroni
//! intervals and the Wilson interval.

use robust_update::dgp::Marginal;
use robust_update::stats::{
    acceptance_statistic, acceptance_test, bonferroni_intervals, chi_square_quantile,
    normal_upper_quantile, wilson_interval, EllipsoidRegion,
};

fn main() -> robust_update::Result<()> {
    for df in [1, 2, 5] {
        println!(
            "chi2({df}) 95% quantile {:.4}",
            chi_square_quantile(df, 0.05)?
        );
    }
    println!("z(0.025) {:.6}", normal_upper_quantile(0.025)?);

    let n = 500;
    let phi = Marginal::new(vec![0.46, 0.34, 0.20])?;
    for pbar in [vec![0.5, 0.3, 0.2], vec![0.4, 0.4, 0.2]] {
        let pbar = Marginal::new(pbar)?;
        println!(
            "null {:?}: statistic {:.3}, accepted {}",
            pbar.probs(),
            acceptance_statistic(&phi, &pbar, n)?,
            acceptance_test(&phi, &pbar, n, 0.05)?
        );
    }
    let region = EllipsoidRegion::iid(&Marginal::new(vec![0.5, 0.3, 0.2])?, n, 0.05)?;
    println!(
        "ellipsoid threshold {:.4}, contains phi {}",
        region.threshold,
        region.contains(phi.reduced())?
    );
    println!(
        "bonferroni intervals {:?}",
        bonferroni_intervals(&phi, n, 0.05)?
    );
    println!(
        "wilson for 0.46 at N = {n}: {:?}",
        wilson_interval(0.46, n, 0.05)?
    );
    Ok(())
}
