//! Every set-valued updating rule applied to the same family and data; prints
//! which listed processes survive and whether the box branch does.

use robust_update::dgp::{family_contains, sample, BoxFamily, DgpFamily, IndependentDgp, Marginal};
use robust_update::update::{apply_rule, Rule, UpdateParams};

fn main() -> robust_update::Result<()> {
    let listed = vec![
        IndependentDgp::iid(Marginal::new(vec![0.5, 0.3, 0.2])?),
        IndependentDgp::periodic(vec![
            Marginal::new(vec![0.8, 0.1, 0.1])?,
            Marginal::new(vec![0.2, 0.5, 0.3])?,
        ])?,
        IndependentDgp::iid(Marginal::new(vec![0.2, 0.2, 0.6])?),
    ];
    let boxed = BoxFamily::stationary(robust_update::dgp::MarginalBox::new(
        vec![0.0, 0.4, 0.0],
        vec![0.3, 1.0, 0.3],
    )?);
    let family = DgpFamily::union(vec![
        DgpFamily::explicit(listed.clone())?,
        DgpFamily::Box(boxed),
    ])?;
    let data = sample(&listed[1], 400, 7);
    println!("counts {:?}", data.counts(3));

    let params = UpdateParams {
        epsilon: 0.05,
        alpha: 0.05,
        bonferroni: false,
    };
    for rule in [Rule::Atu, Rule::Ml, Rule::Fb, Rule::Riid, Rule::Bonferroni] {
        let g = apply_rule(rule, &family, &data, &params)?;
        let kept: Vec<usize> = (0..listed.len())
            .filter(|&i| family_contains(&g, &listed[i]).unwrap_or(false))
            .collect();
        let boxes = g
            .leaves()
            .iter()
            .filter(|l| matches!(l, DgpFamily::Box(_)))
            .count();
        println!(
            "{:>10}: listed members kept {kept:?}, box branches kept {boxes}",
            rule.name()
        );
    }
    Ok(())
}
