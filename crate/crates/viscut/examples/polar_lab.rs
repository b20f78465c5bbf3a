//! The reverse-polar laboratory on finite point sets.
//!
//! The reverse polar of `S` at `xbar` collects all inequalities
//! `alpha . (x - xbar) >= 1` valid across `S` — exactly the cuts that
//! separate `xbar`.  For finite `S` it is a polyhedron we can probe
//! with small LPs, which makes the structure theorems checkable:
//!
//! * the radially visible subset generates the same reverse polar;
//! * scaling points away from the anchor changes nothing (shadows);
//! * when the anchor is outside the hull, hull-visible points (and
//!   even just the hull-visible vertices) suffice;
//! * the reverse polar is empty exactly when the anchor cannot be
//!   separated, i.e. lies in the closed convex hull.

use viscut::multipoly::Point;
use viscut::polarlab::{
    generator_equal, hull_visible_subset, min_scale_in_hull, polar_empty, radial_visible_subset,
    reverse_polar, run_check, separate, shadow_sample, FinitePointSet, LabCheck,
};

fn pt(x: f64, y: f64) -> Point {
    Point::new(vec![x, y])
}

fn main() {
    // A staircase of four points seen from the origin.  (2,2) sits
    // behind (1,1)-direction points and (3,3) is a scaled shadow of it.
    let ps = FinitePointSet::new(
        vec![pt(2.0, 0.0), pt(0.0, 2.0), pt(2.0, 2.0), pt(3.0, 3.0)],
        pt(0.0, 0.0),
    )
    .unwrap();

    println!("staircase set, anchor at the origin:");
    println!("  reverse polar rows (alpha . row >= 1):");
    for row in reverse_polar(&ps).rows {
        println!("    {row:?}");
    }
    println!(
        "  radially visible subset: {:?}",
        radial_visible_subset(&ps)
    );
    println!(
        "  hull-visible subset:     {:?}",
        hull_visible_subset(&ps).unwrap()
    );

    // The radial subset generates the same polar; so do shadows.
    let radial = ps.subset(&radial_visible_subset(&ps)).unwrap();
    println!(
        "  radial subset generates the same polar: {}",
        generator_equal(&ps, &radial).unwrap()
    );
    let shadows = shadow_sample(&ps, &[1.5, 2.0, 3.25]).unwrap();
    println!(
        "  adding scaled shadows leaves it unchanged: {}",
        generator_equal(&ps, &shadows).unwrap()
    );

    // min-scale probes: how far towards the hull must a direction be
    // scaled before it enters?  Values < 1 mean the point is inside.
    for x in [pt(4.0, 0.0), pt(2.0, 0.0), pt(-1.0, -1.0)] {
        println!(
            "  min scale placing {:?} in the hull: {:?}",
            x.coords,
            min_scale_in_hull(&ps, &x).unwrap()
        );
    }

    // A cross around the origin: the anchor is inside the hull, the
    // polar is empty, and no separating inequality exists.
    let cross = FinitePointSet::new(
        vec![pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0), pt(0.0, -1.0)],
        pt(0.0, 0.0),
    )
    .unwrap();
    println!("\ncross set, anchor inside the hull:");
    println!("  polar empty: {}", polar_empty(&cross).unwrap());
    println!("  separating alpha: {:?}", separate(&cross).unwrap());

    // The packaged structural checks run all of this per point set.
    println!("\npackaged checks on the staircase:");
    for check in [
        LabCheck::Visible,
        LabCheck::Shadow,
        LabCheck::SmallestInter,
        LabCheck::SmallestClosed,
    ] {
        let report = run_check(&ps, check).unwrap();
        println!(
            "  {:<15} pass: {} ({})",
            report.check.name(),
            report.pass,
            report.note
        );
    }
}
