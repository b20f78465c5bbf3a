//! For quadratic `g` the visible region is exactly a slice of the
//! surface by one half-space.
//!
//! Write `g(x) = x'Qx + b.x + c`.  The segment polynomial from a surface
//! point `x` to the anchor is quadratic in `lambda`, and working out when
//! it stays positive shows that `x` is visible if and only if
//!
//!     (2 Q xbar + b) . x + (b . xbar + 2c) >= 0,
//!
//! with visibility in the interior and grazing contacts on the boundary
//! of that half-space.  This example derives the half-space for two
//! instances and cross-checks it against the Sturm decision on a bundle
//! of rays.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use viscut::multipoly::{MultiPoly, Point};
use viscut::visibility::{
    is_visible, polar_halfspace, surface_points_along, ConvexDomain, ProblemInstance,
};

fn cross_check(inst: &ProblemInstance, alpha: &[f64], beta: f64, rays: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = inst.domain().dim();
    let mut agree = 0usize;
    let mut tested = 0usize;
    for _ in 0..rays {
        let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if dir.iter().all(|d| d.abs() < 1e-3) {
            continue;
        }
        for x in surface_points_along(inst, &dir) {
            let side: f64 = alpha.iter().zip(&x.coords).map(|(a, v)| a * v).sum::<f64>() + beta;
            if side.abs() < 1e-7 {
                continue; // boundary of the half-space: grazing zone
            }
            tested += 1;
            if is_visible(inst, &x).unwrap() == (side > 0.0) {
                agree += 1;
            }
        }
    }
    println!("    Sturm agreement on sampled surface points: {agree}/{tested}");
}

fn main() {
    // Unit circle from (2, 0): Q = I, b = 0, c = -1 gives
    // alpha = (4, 0), beta = -2, i.e. the visible cap is x1 >= 1/2 —
    // precisely the arc between the two tangent points.
    let circle = MultiPoly::from_terms(2, &[(1.0, &[2, 0]), (1.0, &[0, 2]), (-1.0, &[0, 0])]);
    let inst = ProblemInstance::new(
        circle,
        ConvexDomain::from_bounds(&[-2.0, -2.0], &[2.0, 2.0]),
        Point::new(vec![2.0, 0.0]),
    )
    .unwrap();
    let (alpha, beta) = polar_halfspace(inst.g(), inst.xbar()).unwrap();
    println!("circle from (2, 0): alpha = {alpha:?}, beta = {beta}");
    println!("    => visible cap is x1 >= {}", -beta / alpha[0]);
    cross_check(&inst, &alpha, beta, 200);

    // A 3-d quadratic surface seen from the origin.  The half-space
    // comes out as x1 + x2 + x3 <= 2; a brute-force check over sampled
    // surface points confirms the direction of the inequality.
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
    let inst = ProblemInstance::new(
        quad,
        ConvexDomain::from_bounds(&[-0.1, 0.0, 0.0], &[2.0, 2.0, 2.0]),
        Point::new(vec![0.0; 3]),
    )
    .unwrap();
    let (alpha, beta) = polar_halfspace(inst.g(), inst.xbar()).unwrap();
    println!("\n3-d quadratic from the origin: alpha = {alpha:?}, beta = {beta}");
    println!("    => visible points satisfy x1 + x2 + x3 <= {beta}");
    cross_check(&inst, &alpha, beta, 400);
}
