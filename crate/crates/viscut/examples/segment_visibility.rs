//! What it means for a surface point to be "visible" from the anchor.
//!
//! An instance is a basic region `S = {x : g(x) <= 0}` inside a box and
//! an anchor `xbar` with `g(xbar) > 0`.  A point `x` with `g(x) = 0` is
//! visible when the open segment from `x` to `xbar` stays strictly
//! outside `S`.  Restricting `g` to the segment gives one univariate
//! polynomial `p(lambda) = g(x + lambda (xbar - x))`, and visibility is
//! exactly `p > 0` on `(0, 1]` — decided here without any sampling, by
//! counting roots with Sturm sequences.

use viscut::multipoly::{MultiPoly, Point};
use viscut::visibility::{in_relaxation, is_visible, ConvexDomain, ProblemInstance};

fn report(inst: &ProblemInstance, x: &[f64]) {
    let p = Point::new(x.to_vec());
    let seg = inst.segment_poly(&p);
    println!(
        "  x = {x:?}: g(x) = {:+.3e}, p(lambda) coeffs = {:?}",
        inst.g().eval(x),
        seg.coeffs()
    );
    println!(
        "    visible: {}, in relaxation: {}",
        is_visible(inst, &p).unwrap(),
        in_relaxation(inst, &p).unwrap()
    );
}

fn main() {
    // The unit circle seen from (2, 0): the near cap is visible, the far
    // side is blocked by the disk itself.
    let circle = MultiPoly::from_terms(2, &[(1.0, &[2, 0]), (1.0, &[0, 2]), (-1.0, &[0, 0])]);
    let inst = ProblemInstance::new(
        circle,
        ConvexDomain::from_bounds(&[-2.0, -2.0], &[2.0, 2.0]),
        Point::new(vec![2.0, 0.0]),
    )
    .unwrap();

    println!("unit circle from (2, 0):");
    report(&inst, &[1.0, 0.0]); // nearest point: visible
    report(&inst, &[-1.0, 0.0]); // antipode: the segment crosses the disk
    report(&inst, &[0.5, 0.75]); // not on the surface at all

    // A cubic whose surface the segment merely grazes: the segment
    // polynomial is 4 lambda (2 lambda - 1)^2, zero at the midpoint.
    // Visibility demands strict positivity on (0, 1], so the point is
    // not visible — but it belongs to the closed relaxation, where a
    // grazing contact is allowed.
    let cubic = MultiPoly::from_terms(2, &[(1.0, &[3, 0]), (1.0, &[1, 2]), (-1.0, &[1, 0])]);
    let inst = ProblemInstance::new(
        cubic,
        ConvexDomain::from_bounds(&[-2.0, -3.0], &[2.0, 3.0]),
        Point::new(vec![1.0, -2.0]),
    )
    .unwrap();

    println!("\ncubic (x1^2 + x2^2 - 1) x1 from (1, -2):");
    report(&inst, &[-1.0, 0.0]); // grazing: relaxation only
    report(&inst, &[1.0, 0.0]); // a genuinely visible point
}
