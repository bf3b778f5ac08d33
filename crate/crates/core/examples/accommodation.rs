//! Does an updated family accommodate the truth, and does it refine the initial
//! one? When it does not accommodate, a basic decision problem separates them.

use robust_update::decision::{accommodates, future_hull, refines, separating_basic_problem};
use robust_update::dgp::{BoxFamily, DgpFamily, IndependentDgp};

fn main() -> robust_update::Result<()> {
    let initial = DgpFamily::Box(BoxFamily::bernoulli(0.2, 0.8)?);
    let updated = DgpFamily::Box(BoxFamily::bernoulli(0.4, 0.7)?);
    println!("refines: {}", refines(&updated, &initial, 0, 1)?);

    for p in [0.5, 0.75] {
        let truth = IndependentDgp::bernoulli_iid(p)?;
        let verdict = accommodates(&updated, &truth, 0, 1)?;
        print!("truth ({p})^inf: accommodated {verdict:?}");
        match separating_basic_problem(&future_hull(&updated, 0, 1)?, &truth, 0)? {
            Some(dp) => println!(
                ", separating act payoffs {:?} vs constant",
                dp.act(0).payoffs()
            ),
            None => println!(),
        }
    }
    Ok(())
}
