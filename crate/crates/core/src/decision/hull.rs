use crate::decision::act::Act;
use crate::dgp::{product_measure, DgpFamily, Marginal, MarginalBox};
use crate::error::{Error, Result};
use crate::lp::in_convex_hull;

/// Default cap on joint-table size and on the number of listed hull points.
pub const DEFAULT_HULL_CAP: usize = 100_000;

/// Closed convex hull of a family's joint marginals over experiments `N+1..N+K`.
#[derive(Debug, Clone, PartialEq)]
pub enum MarginalHull {
    /// Product structure: the marginal of experiment `N+k` ranges over `boxes[k-1]`.
    Rect { boxes: Vec<MarginalBox> },
    /// Convex hull of listed joint vectors of length `d^K`.
    Points {
        d: usize,
        horizon: usize,
        points: Vec<Vec<f64>>,
    },
}

impl MarginalHull {
    pub fn horizon(&self) -> usize {
        match self {
            MarginalHull::Rect { boxes } => boxes.len(),
            MarginalHull::Points { horizon, .. } => *horizon,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            MarginalHull::Rect { boxes } => boxes[0].d(),
            MarginalHull::Points { d, .. } => *d,
        }
    }

    /// Listed points whose hull is this hull (vertex products for a rectangle).
    pub fn points(&self, cap: usize) -> Result<Vec<Vec<f64>>> {
        match self {
            MarginalHull::Points { points, .. } => Ok(points.clone()),
            MarginalHull::Rect { boxes } => {
                let verts: Vec<Vec<Marginal>> = boxes.iter().map(|b| b.vertices()).collect();
                vertex_products(&verts, cap)
            }
        }
    }

    /// Is the joint vector `x` in the hull?
    pub fn contains_point(&self, x: &[f64], cap: usize) -> Result<bool> {
        match self {
            MarginalHull::Rect { boxes } if boxes.len() == 1 => {
                Ok(boxes[0].contains(&Marginal::renormalized(x.to_vec()), 1e-9))
            }
            _ => in_convex_hull(&self.points(cap)?, x),
        }
    }
}

fn check_table(d: usize, k: usize, cap: usize) -> Result<usize> {
    match d.checked_pow(k as u32) {
        Some(size) if size <= cap => Ok(size),
        Some(size) => Err(Error::HorizonTooLarge { size, cap }),
        None => Err(Error::HorizonTooLarge {
            size: usize::MAX,
            cap,
        }),
    }
}

fn vertex_products(per_experiment: &[Vec<Marginal>], cap: usize) -> Result<Vec<Vec<f64>>> {
    let mut count: usize = 1;
    for v in per_experiment {
        count = count.saturating_mul(v.len());
    }
    if count > cap {
        return Err(Error::HorizonTooLarge { size: count, cap });
    }
    let mut out: Vec<Vec<&Marginal>> = vec![Vec::new()];
    for verts in per_experiment {
        out = out
            .into_iter()
            .flat_map(|pre| verts.iter().map(move |v| [pre.clone(), vec![v]].concat()))
            .collect();
    }
    Ok(out.iter().map(|f| product_measure(f)).collect())
}

/// Hull of the family's joint marginals over experiments `n+1..=n+k`.
pub fn future_hull(f: &DgpFamily, n: usize, k: usize) -> Result<MarginalHull> {
    future_hull_capped(f, n, k, DEFAULT_HULL_CAP)
}

pub fn future_hull_capped(f: &DgpFamily, n: usize, k: usize, cap: usize) -> Result<MarginalHull> {
    if k == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let leaves = f.leaves();
    let d = f.d().ok_or(Error::EmptyFamily)?;
    if leaves.iter().all(|l| l.is_empty()) {
        return Err(Error::EmptyFamily);
    }
    check_table(d, k, cap)?;
    let box_boxes = |b: &crate::dgp::BoxFamily| -> Result<Vec<MarginalBox>> {
        if b.constraints().iter().any(|c| c.n() > n) {
            return Err(Error::UnsupportedFamily(
                "sample constraint reaches past the decision origin".into(),
            ));
        }
        Ok((n + 1..=n + k).map(|i| b.box_at(i).clone()).collect())
    };
    if let [DgpFamily::Box(b)] = leaves.as_slice() {
        return Ok(MarginalHull::Rect {
            boxes: box_boxes(b)?,
        });
    }
    let mut points = Vec::new();
    for leaf in leaves {
        match leaf {
            DgpFamily::Box(b) => {
                let verts: Vec<Vec<Marginal>> =
                    box_boxes(b)?.iter().map(|x| x.vertices()).collect();
                points.extend(vertex_products(&verts, cap)?);
            }
            DgpFamily::Explicit(members) => {
                points.extend(members.iter().map(|p| p.joint_future(n, k)))
            }
            DgpFamily::Union(_) => unreachable!("leaves are flattened"),
        }
        if points.len() > cap {
            return Err(Error::HorizonTooLarge {
                size: points.len(),
                cap,
            });
        }
    }
    Ok(MarginalHull::Points {
        d,
        horizon: k,
        points,
    })
}

/// Worst-case expected payoff of `f` over the hull. Rectangles are solved by
/// backward induction: from the last experiment back, each block of `d`
/// continuation values is replaced by its minimum over that experiment's box.
pub fn min_expected_utility(f: &Act, h: &MarginalHull) -> Result<f64> {
    if f.horizon() != h.horizon() || f.d() != h.d() {
        return Err(Error::InvalidProblem(
            "act and hull disagree on horizon or outcome count".into(),
        ));
    }
    match h {
        MarginalHull::Points { points, .. } => Ok(points
            .iter()
            .map(|p| f.expect(p))
            .fold(f64::INFINITY, f64::min)),
        MarginalHull::Rect { boxes } => {
            let d = f.d();
            let mut v = f.payoffs().to_vec();
            for b in boxes.iter().rev() {
                v = v.chunks(d).map(|block| b.min_linear(block)).collect();
            }
            Ok(v[0])
        }
    }
}
