//! The linear programs behind hull membership and separation.

use robust_update::lp::{in_convex_hull, max_separation};

fn main() -> robust_update::Result<()> {
    let points = vec![vec![0.6, 0.4], vec![0.0, 1.0], vec![2.0 / 3.0, 1.0 / 3.0]];
    for target in [vec![0.3, 0.7], vec![0.8, 0.2]] {
        let inside = in_convex_hull(&points, &target)?;
        let (gap, direction) = max_separation(&points, &target)?;
        println!("{target:?}: in hull {inside}, separation {gap:.4} along {direction:?}");
    }
    Ok(())
}
