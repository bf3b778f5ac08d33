//! Normal signals with unknown, unequal variances: the states kept by
//! average-then-update around the sample mean.

use robust_update::models::{gauss_sample, sample_mean, GaussianSignalsModel};

fn main() -> robust_update::Result<()> {
    let theta = 1.5;
    let sigmas = [0.5, 1.0, 2.0];
    let model = GaussianSignalsModel::new(0.5, 2.0, 0.1)?;
    assert!(model.admits(&sigmas));
    for n in [50, 500, 5000] {
        let xs = gauss_sample(theta, &sigmas, n, 3)?;
        let states = model.states(&xs)?;
        println!(
            "N = {n:>4}: mean {:.4}, states {states:?}, holds theta {}",
            sample_mean(&xs)?,
            states.contains(theta)
        );
    }
    Ok(())
}
