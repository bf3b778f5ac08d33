//! Structural parameter and prediction sets in the Bernoulli model with a free
//! nuisance share `delta`.

use robust_update::dgp::SampleData;
use robust_update::models::{
    bern_prediction_asymptotic, bern_prediction_ml, bern_theta_asymptotic, bern_theta_finite,
};

fn main() -> robust_update::Result<()> {
    let delta = 0.2;
    for phi in [0.1, 0.5, 0.9] {
        println!(
            "phi {phi}: theta {:?}, prediction {:?}, ML prediction {:?}",
            bern_theta_asymptotic(phi, delta)?,
            bern_prediction_asymptotic(phi, delta)?,
            bern_prediction_ml(phi, delta)?
        );
    }
    let data = SampleData::binary_with_count(100, 50);
    let sets = bern_theta_finite(&data, delta, 0.05)?;
    println!(
        "N = 100, 50 ones: wilson {:?}\n  theta {:?}\n  prediction {:?}",
        sets.wilson, sets.theta, sets.prediction
    );
    Ok(())
}
