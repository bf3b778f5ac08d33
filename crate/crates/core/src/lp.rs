//! Small linear programs: convex-hull membership, separating payoff vectors and
//! feasibility of average constraints over box families. Backed by `microlp`.

use microlp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::error::{Error, Result};

/// Componentwise tolerance used for membership and feasibility questions.
pub const LP_TOL: f64 = 1e-9;

fn lp_error(e: microlp::Error) -> Error {
    Error::Lp(e.to_string())
}

fn terms(vars: &[Variable], coeffs: impl IntoIterator<Item = f64>) -> Vec<(Variable, f64)> {
    vars.iter()
        .copied()
        .zip(coeffs)
        .filter(|(_, c)| *c != 0.0)
        .collect()
}

/// Is `target` a convex combination of `points`, up to `LP_TOL` per component?
pub fn in_convex_hull(points: &[Vec<f64>], target: &[f64]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    if let Some(p) = points.iter().find(|p| p.len() != target.len()) {
        return Err(Error::DimensionMismatch {
            expected: target.len(),
            got: p.len(),
        });
    }
    // Cheap exits: exact hit, or target outside the bounding box.
    if points
        .iter()
        .any(|p| p.iter().zip(target).all(|(a, b)| (a - b).abs() <= LP_TOL))
    {
        return Ok(true);
    }
    for j in 0..target.len() {
        let lo = points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min);
        let hi = points
            .iter()
            .map(|p| p[j])
            .fold(f64::NEG_INFINITY, f64::max);
        if target[j] < lo - LP_TOL || target[j] > hi + LP_TOL {
            return Ok(false);
        }
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let lambda: Vec<Variable> = points.iter().map(|_| lp.add_var(0.0, (0.0, 1.0))).collect();
    lp.add_constraint(
        terms(&lambda, std::iter::repeat(1.0)),
        ComparisonOp::Eq,
        1.0,
    );
    for j in 0..target.len() {
        let row = terms(&lambda, points.iter().map(|p| p[j]));
        if row.is_empty() {
            if target[j].abs() > LP_TOL {
                return Ok(false);
            }
            continue;
        }
        lp.add_constraint(row.clone(), ComparisonOp::Le, target[j] + LP_TOL);
        lp.add_constraint(row, ComparisonOp::Ge, target[j] - LP_TOL);
    }
    match lp.solve() {
        Ok(_) => Ok(true),
        Err(microlp::Error::Infeasible) => Ok(false),
        Err(e) => Err(lp_error(e)),
    }
}

/// Payoff vector `f` in `[0,1]^d` maximizing `min_k f.points[k] - f.target`.
///
/// Returns `(gap, f)`. A positive gap certifies that `target` lies outside the
/// convex hull of `points`, with `f` a strictly separating act.
pub fn max_separation(points: &[Vec<f64>], target: &[f64]) -> Result<(f64, Vec<f64>)> {
    let d = target.len();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let f: Vec<Variable> = (0..d).map(|_| lp.add_var(0.0, (0.0, 1.0))).collect();
    let gap = lp.add_var(1.0, (-1.0, 1.0));
    for p in points {
        // f.(p - target) - gap >= 0
        let mut row = terms(&f, p.iter().zip(target).map(|(a, b)| a - b));
        row.push((gap, -1.0));
        lp.add_constraint(row, ComparisonOp::Ge, 0.0);
    }
    let sol = lp.solve().map_err(lp_error)?;
    let sol = sol
        .into_solution()
        .map_err(|_| Error::Lp("solve interrupted".into()))?;
    Ok((
        sol.var_value(gap),
        f.iter().map(|&v| sol.var_value(v)).collect(),
    ))
}

/// One periodic class of experiments in a box family: its weight in the
/// sample average and its per-component bounds (intersected with the simplex).
#[derive(Debug, Clone)]
pub struct WeightedBox<'a> {
    pub weight: f64,
    pub lo: &'a [f64],
    pub hi: &'a [f64],
}

fn average_vars(lp: &mut Problem, classes: &[WeightedBox<'_>]) -> Vec<Vec<Variable>> {
    classes
        .iter()
        .map(|c| {
            let q: Vec<Variable> =
                c.lo.iter()
                    .zip(c.hi)
                    .map(|(&l, &h)| lp.add_var(0.0, (l, h)))
                    .collect();
            lp.add_constraint(terms(&q, std::iter::repeat(1.0)), ComparisonOp::Eq, 1.0);
            q
        })
        .collect()
}

fn average_row(classes: &[WeightedBox<'_>], q: &[Vec<Variable>], j: usize) -> Vec<(Variable, f64)> {
    classes
        .iter()
        .zip(q)
        .filter(|(c, _)| c.weight != 0.0)
        .map(|(c, qc)| (qc[j], c.weight))
        .collect()
}

/// Largest `t` such that some achievable average `x = sum_c w_c q_c` (each
/// `q_c` in its box and on the simplex) satisfies `|x_j - center_j| <= radius - t`
/// for every component. The open ball is hit iff the result is positive.
pub fn ball_slack(classes: &[WeightedBox<'_>], center: &[f64], radius: f64) -> Result<f64> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let q = average_vars(&mut lp, classes);
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, radius));
    for (j, &c) in center.iter().enumerate() {
        let mut up = average_row(classes, &q, j);
        up.push((t, 1.0));
        lp.add_constraint(up, ComparisonOp::Le, c + radius);
        let mut down = average_row(classes, &q, j);
        down.push((t, -1.0));
        lp.add_constraint(down, ComparisonOp::Ge, c - radius);
    }
    let sol = lp.solve().map_err(lp_error)?;
    Ok(sol
        .into_solution()
        .map_err(|_| Error::Lp("solve interrupted".into()))?
        .objective())
}

/// Is some achievable average inside the closed box `[lo, hi]` (componentwise,
/// only the first `lo.len()` components are constrained)?
pub fn average_meets_box(classes: &[WeightedBox<'_>], lo: &[f64], hi: &[f64]) -> Result<bool> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let q = average_vars(&mut lp, classes);
    for j in 0..lo.len() {
        let row = average_row(classes, &q, j);
        lp.add_constraint(row.clone(), ComparisonOp::Ge, lo[j] - LP_TOL);
        lp.add_constraint(row, ComparisonOp::Le, hi[j] + LP_TOL);
    }
    match lp.solve() {
        Ok(_) => Ok(true),
        Err(microlp::Error::Infeasible) => Ok(false),
        Err(e) => Err(lp_error(e)),
    }
}
