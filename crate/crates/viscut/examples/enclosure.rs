//! Sound interval boxes around the visible region by branch and prune.
//!
//! The region description `{g = 0, side >= 0}` is not something a cut
//! generator can use directly; what it wants is a box.  The pruner
//! bisects the domain, discards sub-boxes that interval arithmetic
//! proves empty, and hulls the rest.  Every visible point is guaranteed
//! to stay inside — looseness only costs cut strength.

use viscut::interval::IntervalVector;
use viscut::multipoly::{MultiPoly, Point};
use viscut::tighten::{fbbt_halfspace, prune_enclosure};
use viscut::visibility::{region_description, ConvexDomain, ProblemInstance};

fn main() {
    // Circle from (2, 0): the visible cap is the arc between the two
    // tangent points, whose exact box is [1/2, 1] x [-r3, r3] with
    // r3 = sqrt(3)/2 ~ 0.866.  Watch the enclosure converge onto it.
    let circle = MultiPoly::from_terms(2, &[(1.0, &[2, 0]), (1.0, &[0, 2]), (-1.0, &[0, 0])]);
    let inst = ProblemInstance::new(
        circle,
        ConvexDomain::from_bounds(&[-2.0, -2.0], &[2.0, 2.0]),
        Point::new(vec![2.0, 0.0]),
    )
    .unwrap();
    let region = region_description(&inst);
    println!("circle cap (exact box [0.5, 1] x [-0.866, 0.866]):");
    for depth in [6, 10, 16] {
        let enc = prune_enclosure(&region, depth, 1e-6);
        println!(
            "  depth {depth:2}: {} ({} leaves)",
            enc.bounds.as_ref().unwrap(),
            enc.leaves_kept
        );
    }

    // A curvy cubic over [-1/2, 3]^2 seen from the origin.  The region
    // description is only a relaxation here (degree > 2), yet the
    // enclosure still settles into a small corner of the domain.
    let cubic = MultiPoly::from_terms(
        2,
        &[
            (-1.0, &[2, 1]),
            (5.0, &[1, 2]),
            (-1.0, &[0, 2]),
            (-1.0, &[0, 1]),
            (-2.0, &[1, 0]),
            (2.0, &[0, 0]),
        ],
    );
    let inst = ProblemInstance::new(
        cubic,
        ConvexDomain::from_bounds(&[-0.5, -0.5], &[3.0, 3.0]),
        Point::new(vec![0.0, 0.0]),
    )
    .unwrap();
    let region = region_description(&inst);
    println!("\ncubic over [-1/2, 3]^2:");
    for depth in [8, 12, 18] {
        let enc = prune_enclosure(&region, depth, 1e-6);
        println!(
            "  depth {depth:2}: {} ({} leaves)",
            enc.bounds.as_ref().unwrap(),
            enc.leaves_kept
        );
    }

    // The half-space propagation that backs the quadratic case, on its
    // own: one constraint, per-coordinate bound tightening.
    let b = IntervalVector::from_bounds(&[0.0, 0.0], &[2.0, 2.0]);
    let t = fbbt_halfspace(&b, &[-1.0, -1.0], 1.0).unwrap();
    println!("\nfbbt: [0,2]^2 with -x1 - x2 + 1 >= 0 tightens to {t}");
    println!(
        "fbbt: [0,1] with -x1 - 2 >= 0 is infeasible: {:?}",
        fbbt_halfspace(&IntervalVector::from_bounds(&[0.0], &[1.0]), &[-1.0], -2.0).is_none()
    );
}
