//! Membership in the relaxation as a semidefinite feasibility system.
//!
//! For a surface point `x`, collect the coefficients of the segment
//! polynomial `p(lambda) = g(x + lambda (xbar - x))` into linear
//! equations on a pair of Gram matrices (A, B): solutions with both
//! matrices positive semidefinite exist exactly when `x` lies in the
//! relaxation.  The certificate module builds rank-1 witnesses directly
//! from the sum-of-squares split of `p`, so no SDP solver is needed —
//! and any witness can be checked by hand against the equations.

use viscut::certify::{gram_system, gram_witness};
use viscut::multipoly::{MultiPoly, Point};
use viscut::visibility::{ConvexDomain, ProblemInstance};

fn main() {
    // The grazing cubic: from (1, -2) the point (-1, 0) is reached by a
    // segment that touches the surface at its midpoint, so it is in the
    // relaxation and a PSD witness must exist.
    let g = MultiPoly::from_terms(2, &[(1.0, &[3, 0]), (1.0, &[1, 2]), (-1.0, &[1, 0])]);
    let inst = ProblemInstance::new(
        g.clone(),
        ConvexDomain::from_bounds(&[-2.0, -3.0], &[2.0, 3.0]),
        Point::new(vec![1.0, -2.0]),
    )
    .unwrap();
    let x = Point::new(vec![-1.0, 0.0]);

    let (system, taylor) = gram_system(&g, inst.xbar(), &x);
    println!("segment coefficients (ascending): {taylor:?}");
    println!(
        "gram system: {} equations, A is {}x{}, B is {}x{}",
        system.equations.len(),
        system.a_size,
        system.a_size,
        system.b_size,
        system.b_size
    );

    match gram_witness(&g, inst.xbar(), &x).unwrap() {
        Some(w) => {
            println!("witness A =\n{}", w.a);
            println!("witness B =\n{}", w.b);
            println!("min eigenvalue across A, B: {:+.3e}", w.min_eigenvalue());
            println!(
                "max equation residual: {:.3e}",
                system.max_residual(&w.a, &w.b, &taylor)
            );
        }
        None => println!("no witness — point not in the relaxation"),
    }

    // A blocked point on the 3-d quadratic: the segment dips inside S,
    // so the system has no PSD solution and the constructor says so.
    let quad = MultiPoly::from_terms(
        3,
        &[
            (-1.0, &[1, 1, 0]),
            (1.0, &[1, 0, 1]),
            (1.0, &[0, 1, 1]),
            (-1.0, &[1, 0, 0]),
            (-1.0, &[0, 1, 0]),
            (-1.0, &[0, 0, 1]),
            (1.0, &[0, 0, 0]),
        ],
    );
    let xbar = Point::new(vec![0.0; 3]);
    let blocked = Point::new(vec![1.0, 2.0, 2.0]);
    println!(
        "\nblocked point {:?}: witness? {}",
        blocked.coords,
        gram_witness(&quad, &xbar, &blocked).unwrap().is_some()
    );
    let visible = Point::new(vec![1.0, 0.0, 0.0]);
    println!(
        "visible point {:?}: witness? {}",
        visible.coords,
        gram_witness(&quad, &xbar, &visible).unwrap().is_some()
    );
}
