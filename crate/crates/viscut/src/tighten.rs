//! Rigorous box enclosures of the visible region by branch and prune.
//!
//! Given a region description `{ x in C : g(x) = 0, side(x) >= 0 }`, the
//! pruner bisects the domain box recursively and discards a sub-box only
//! when interval arithmetic proves it cannot meet the region: the
//! enclosure of `g` misses zero, the side constraint is negative on the
//! whole box, or a linear constraint of `C` fails everywhere.  What
//! survives is hulled into a single box, which therefore contains every
//! visible point — possibly loosely (interval bounds overshoot, and for
//! degree above two the side constraint is only a necessary condition),
//! but never unsafely.  Looseness costs cut strength; unsoundness would
//! cost correctness, and the pipeline only needs the former.
//!
//! For quadratic regions the half-space admits cheap bound propagation
//! ([`fbbt_halfspace`]), which also runs once over the final hull so the
//! reported box never sticks out of the half-space's feasible slab.

use crate::interval::{Interval, IntervalVector};
use crate::linprog::Sense;
use crate::visibility::{RegionConstraint, RegionDescription};

/// Default bisection depth.
pub const DEFAULT_MAX_DEPTH: usize = 18;
/// Default stopping width, relative to the initial box widths.
pub const DEFAULT_MIN_WIDTH: f64 = 1e-4;

/// Outcome of a pruning run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnclosureStatus {
    Nonempty,
    /// Every sub-box was discarded: no visible point exists in the
    /// domain, so the anchor cannot be separated via this surface.
    ProvedEmpty,
}

/// A sound outer enclosure of the visible region.
#[derive(Clone, Debug)]
pub struct Enclosure {
    pub status: EnclosureStatus,
    /// Hull of the surviving leaves; `None` exactly when proved empty.
    pub bounds: Option<IntervalVector>,
    pub leaves_kept: usize,
    pub depth_used: usize,
}

/// Interval range of `a . x` over a box.
fn linear_range(a: &[f64], cell: &IntervalVector) -> Interval {
    let mut acc = Interval::point(0.0);
    for (c, iv) in a.iter().zip(cell.comps()) {
        acc = acc + iv.scale(*c);
    }
    acc
}

/// Can the cell be discarded outright?
fn provably_outside(region: &RegionDescription, cell: &IntervalVector) -> bool {
    let g_range = region.surface.interval_eval(cell);
    if g_range.lo > 0.0 || g_range.hi < 0.0 {
        return true;
    }
    if region.side_interval(cell).hi < 0.0 {
        return true;
    }
    for con in region.domain.linear() {
        let range = linear_range(&con.a, cell);
        let tol = 1e-12 * (1.0 + con.rhs.abs());
        let violated = match con.sense {
            Sense::Le => range.lo > con.rhs + tol,
            Sense::Ge => range.hi < con.rhs - tol,
            Sense::Eq => range.lo > con.rhs + tol || range.hi < con.rhs - tol,
        };
        if violated {
            return true;
        }
    }
    false
}

struct PruneState<'a> {
    region: &'a RegionDescription,
    root_widths: Vec<f64>,
    min_width: f64,
    max_depth: usize,
    hull: Option<IntervalVector>,
    leaves_kept: usize,
    depth_used: usize,
}

impl PruneState<'_> {
    fn keep(&mut self, cell: &IntervalVector) {
        self.leaves_kept += 1;
        self.hull = Some(match self.hull.take() {
            Some(h) => h.hull(cell),
            None => cell.clone(),
        });
    }

    fn recurse(&mut self, cell: IntervalVector, depth: usize) {
        self.depth_used = self.depth_used.max(depth);
        if provably_outside(self.region, &cell) {
            return;
        }
        let widest = cell
            .comps()
            .iter()
            .zip(&self.root_widths)
            .map(|(iv, w)| if *w > 0.0 { iv.width() / w } else { 0.0 })
            .fold(0.0f64, f64::max);
        if depth >= self.max_depth || widest <= self.min_width {
            self.keep(&cell);
            return;
        }
        let axis = cell.widest_relative(&self.root_widths);
        let (left, right) = cell.bisect(axis);
        self.recurse(left, depth + 1);
        self.recurse(right, depth + 1);
    }
}

/// Branch-and-prune enclosure of a region description.
///
/// Bisection always splits the coordinate that is widest relative to the
/// initial box; a branch stops at `max_depth` or once every coordinate
/// has shrunk below `min_width` times its initial width.  The result is
/// the interval hull of all undiscarded leaves — for quadratic regions
/// additionally tightened by one half-space propagation pass — or a
/// `ProvedEmpty` status when nothing survives.
pub fn prune_enclosure(region: &RegionDescription, max_depth: usize, min_width: f64) -> Enclosure {
    assert!((1..=40).contains(&max_depth), "max_depth out of range");
    assert!(min_width > 0.0, "min_width must be positive");
    let root = region.domain.bounds().clone();
    let mut state = PruneState {
        region,
        root_widths: root.comps().iter().map(|iv| iv.width()).collect(),
        min_width,
        max_depth,
        hull: None,
        leaves_kept: 0,
        depth_used: 0,
    };
    state.recurse(root, 0);
    // The hull of the leaves can overhang a half-space constraint by up
    // to a leaf width; one propagation pass trims the overhang.
    let bounds = match (state.hull, &region.constraint) {
        (Some(b), RegionConstraint::Halfspace { alpha, beta }) => fbbt_halfspace(&b, alpha, *beta),
        (other, _) => other,
    };
    match bounds {
        Some(b) => Enclosure {
            status: EnclosureStatus::Nonempty,
            bounds: Some(b),
            leaves_kept: state.leaves_kept,
            depth_used: state.depth_used,
        },
        None => Enclosure {
            status: EnclosureStatus::ProvedEmpty,
            bounds: None,
            leaves_kept: 0,
            depth_used: state.depth_used,
        },
    }
}

/// Feasibility-based bound tightening for a single half-space: shrinks
/// the box towards `box ∩ { alpha . x + beta >= 0 }` (never below it)
/// and returns `None` when the half-space provably misses the box.
///
/// Each coordinate bound is pushed using the interval maximum of the
/// remaining terms; because the tightened side of each bound never
/// feeds the other coordinates' maxima, a handful of rounds reaches the
/// fixed point.
pub fn fbbt_halfspace(box_: &IntervalVector, alpha: &[f64], beta: f64) -> Option<IntervalVector> {
    let n = box_.dim();
    assert_eq!(alpha.len(), n, "alpha dimension mismatch");
    let mut current = box_.clone();
    for _round in 0..n.max(1) {
        let mut changed = false;
        for i in 0..n {
            if alpha[i] == 0.0 {
                continue;
            }
            // alpha_i x_i >= -beta - max(sum of other terms) =: m.
            let mut others = Interval::point(beta);
            for (j, iv) in current.comps().iter().enumerate() {
                if j != i {
                    others = others + iv.scale(alpha[j]);
                }
            }
            let m = -others.hi;
            let iv = current.comp(i);
            if alpha[i] > 0.0 {
                let lo = m / alpha[i];
                if lo > iv.hi {
                    return None;
                }
                if lo > iv.lo {
                    current.set_comp(i, Interval::new(lo, iv.hi));
                    changed = true;
                }
            } else {
                let hi = m / alpha[i];
                if hi < iv.lo {
                    return None;
                }
                if hi < iv.hi {
                    current.set_comp(i, Interval::new(iv.lo, hi));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::fixtures::{example1, quad3};
    use crate::multipoly::{MultiPoly, Point};
    use crate::visibility::{
        is_visible, region_description, surface_points_along, ConvexDomain, ProblemInstance,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    fn contains_box(outer: &IntervalVector, inner: &IntervalVector, tol: f64) -> bool {
        outer
            .comps()
            .iter()
            .zip(inner.comps())
            .all(|(o, i)| o.lo <= i.lo + tol && i.hi <= o.hi + tol)
    }

    #[test]
    fn fbbt_known_cases() {
        let b = IntervalVector::from_bounds(&[0.0, 0.0], &[2.0, 2.0]);
        // x1 + x2 - 1 >= 0 cannot tighten [0,2]^2.
        let t = fbbt_halfspace(&b, &[1.0, 1.0], -1.0).unwrap();
        assert_eq!(t.lo(), vec![0.0, 0.0]);
        assert_eq!(t.hi(), vec![2.0, 2.0]);
        // -x1 - x2 + 1 >= 0 tightens to [0,1]^2.
        let t = fbbt_halfspace(&b, &[-1.0, -1.0], 1.0).unwrap();
        assert_eq!(t.lo(), vec![0.0, 0.0]);
        assert_eq!(t.hi(), vec![1.0, 1.0]);
        // x1 - 1/2 >= 0 on [-2,2] clips the lower bound.
        let b1 = IntervalVector::from_bounds(&[-2.0], &[2.0]);
        let t = fbbt_halfspace(&b1, &[1.0], -0.5).unwrap();
        assert_eq!(t.lo(), vec![0.5]);
        assert_eq!(t.hi(), vec![2.0]);
        // -x1 - 2 >= 0 is infeasible on [0,1].
        let b2 = IntervalVector::from_bounds(&[0.0], &[1.0]);
        assert!(fbbt_halfspace(&b2, &[-1.0], -2.0).is_none());
    }

    #[test]
    fn fbbt_result_contains_the_true_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        for _ in 0..100 {
            let n = rng.gen_range(2..=4);
            let lo: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..0.0)).collect();
            let hi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
            let b = IntervalVector::from_bounds(&lo, &hi);
            let alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let beta = rng.gen_range(-2.0..2.0);
            let Some(t) = fbbt_halfspace(&b, &alpha, beta) else {
                continue;
            };
            for _ in 0..50 {
                let x: Vec<f64> = (0..n).map(|i| rng.gen_range(lo[i]..=hi[i])).collect();
                let side: f64 = alpha.iter().zip(&x).map(|(a, v)| a * v).sum::<f64>() + beta;
                if side >= 0.0 {
                    assert!(t.contains_point(&x), "feasible point clipped");
                }
            }
        }
    }

    fn circle_region() -> RegionDescription {
        let g = MultiPoly::from_terms(2, &[(1.0, &[2, 0]), (1.0, &[0, 2]), (-1.0, &[0, 0])]);
        let inst = ProblemInstance::new(
            g,
            ConvexDomain::from_bounds(&[-2.0, -2.0], &[2.0, 2.0]),
            pt(&[2.0, 0.0]),
        )
        .unwrap();
        region_description(&inst)
    }

    #[test]
    fn circle_enclosure_converges_to_the_visible_cap() {
        let enc = prune_enclosure(&circle_region(), 16, 1e-6);
        assert_eq!(enc.status, EnclosureStatus::Nonempty);
        let b = enc.bounds.unwrap();
        // Visible cap: x1 in [1/2, 1], x2 in [-sqrt(3)/2, sqrt(3)/2].
        let s3 = 3.0f64.sqrt() / 2.0;
        let expect = [(0.5, 1.0), (-s3, s3)];
        for (i, (lo, hi)) in expect.iter().enumerate() {
            assert!(
                (b.comp(i).lo - lo).abs() <= 0.02 && (b.comp(i).hi - hi).abs() <= 0.02,
                "coordinate {i}: got {}, want [{lo}, {hi}]",
                b.comp(i)
            );
        }
    }

    fn quad_region() -> RegionDescription {
        let inst = ProblemInstance::new(
            quad3(),
            ConvexDomain::from_bounds(&[-0.1, 0.0, 0.0], &[2.0, 2.0, 2.0]),
            pt(&[0.0; 3]),
        )
        .unwrap();
        region_description(&inst)
    }

    #[test]
    fn quad_enclosure_tightens_towards_the_optimal_box() {
        // The tightest box around the visible points has upper bounds
        // 1, (23 + 3 sqrt 5)/20, (19 + 3 sqrt 5)/20.  The hull of grid
        // leaves overshoots each bound by a few leaf widths, so the
        // tolerances below scale with depth (leaf width ~2/2^(d/3)).
        let s5 = 5.0f64.sqrt();
        let expect_hi = [1.0, (23.0 + 3.0 * s5) / 20.0, (19.0 + 3.0 * s5) / 20.0];
        for (depth, tol) in [(15, 0.2), (20, 0.06)] {
            let enc = prune_enclosure(&quad_region(), depth, 1e-7);
            let b = enc.bounds.unwrap();
            for i in 0..3 {
                // Sound: never below the true box...
                assert!(b.comp(i).hi >= expect_hi[i] - 1e-9);
                // ... and converging from above.
                assert!(
                    b.comp(i).hi <= expect_hi[i] + tol,
                    "depth {depth}, coordinate {i}: {} vs {}",
                    b.comp(i).hi,
                    expect_hi[i]
                );
            }
            assert!((b.comp(0).lo + 0.1).abs() < 1e-9);
            assert!(b.comp(1).lo.abs() < tol && b.comp(2).lo.abs() < tol);
        }
    }

    #[test]
    fn example1_enclosure_stays_inside_the_published_box() {
        // Cubic instance over [-1/2, 3]^2 whose visible region is known
        // to fit in [-1/2, 17/10] x [-6/25, 3/2].
        let inst = ProblemInstance::new(
            example1(),
            ConvexDomain::from_bounds(&[-0.5, -0.5], &[3.0, 3.0]),
            pt(&[0.0, 0.0]),
        )
        .unwrap();
        let enc = prune_enclosure(&region_description(&inst), 18, 1e-5);
        assert_eq!(enc.status, EnclosureStatus::Nonempty);
        let b = enc.bounds.unwrap();
        let v = IntervalVector::from_bounds(&[-0.5, -6.0 / 25.0], &[1.7, 1.5]);
        assert!(
            contains_box(&v.pad(0.05), &b, 0.0),
            "enclosure {b} escapes the reference box"
        );
    }

    #[test]
    fn empty_region_is_proved_empty() {
        // Surface x1^2 + x2^2 = 1 intersected with the half-space
        // x1 >= 3: nothing survives in [-2,2]^2.
        let mut region = circle_region();
        region.constraint = RegionConstraint::Halfspace {
            alpha: vec![1.0, 0.0],
            beta: -3.0,
        };
        let enc = prune_enclosure(&region, 10, 1e-4);
        assert_eq!(enc.status, EnclosureStatus::ProvedEmpty);
        assert!(enc.bounds.is_none());
        assert_eq!(enc.leaves_kept, 0);
    }

    fn random_quadratic(rng: &mut ChaCha8Rng) -> ProblemInstance {
        loop {
            let n = rng.gen_range(2..=3);
            let lo: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..-1.0)).collect();
            let hi: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..3.0)).collect();
            let xbar: Vec<f64> = (0..n)
                .map(|i| rng.gen_range(lo[i] * 0.4..hi[i] * 0.4))
                .collect();
            let mut terms: Vec<(f64, Vec<u32>)> = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let mut e = vec![0u32; n];
                    e[i] += 1;
                    e[j] += 1;
                    terms.push((rng.gen_range(-2.0..2.0), e));
                }
                let mut e = vec![0u32; n];
                e[i] = 1;
                terms.push((rng.gen_range(-2.0..2.0), e));
            }
            let raw: Vec<(f64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
            let mut g = MultiPoly::from_terms(n, &raw);
            let shift = 0.5 - g.eval(&xbar);
            g = g.add(&MultiPoly::constant(n, shift));
            if let Ok(inst) =
                ProblemInstance::new(g, ConvexDomain::from_bounds(&lo, &hi), Point::new(xbar))
            {
                return inst;
            }
        }
    }

    /// Soundness: every visible point found by the exact oracle lies in
    /// the pruned box, with zero escapes tolerated.
    #[test]
    fn oracle_visible_points_never_escape_the_enclosure() {
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        let mut checked = 0;
        for _ in 0..40 {
            let inst = random_quadratic(&mut rng);
            let region = region_description(&inst);
            let enc = prune_enclosure(&region, 12, 1e-4);
            let n = inst.domain().dim();
            for _ in 0..8 {
                let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                if dir.iter().all(|d| d.abs() < 1e-3) {
                    continue;
                }
                for x in surface_points_along(&inst, &dir) {
                    if is_visible(&inst, &x).unwrap() {
                        checked += 1;
                        let b = enc
                            .bounds
                            .as_ref()
                            .expect("a visible point exists, box cannot be empty");
                        assert!(
                            b.pad(1e-9).contains_point(&x.coords),
                            "visible point {:?} escaped {b}",
                            x.coords
                        );
                    }
                }
            }
        }
        assert!(checked >= 60, "only {checked} visible points exercised");
    }

    /// Deeper search never loosens the enclosure.
    #[test]
    fn refinement_is_monotone_in_depth() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..25 {
            let inst = random_quadratic(&mut rng);
            let region = region_description(&inst);
            let shallow = prune_enclosure(&region, 8, 1e-6);
            let deep = prune_enclosure(&region, 10, 1e-6);
            match (&shallow.bounds, &deep.bounds) {
                (Some(s), Some(d)) => {
                    assert!(contains_box(s, d, 1e-12), "deep {d} escapes shallow {s}")
                }
                (Some(_), None) => {} // deeper search proved emptiness
                (None, Some(_)) => panic!("emptiness must persist at depth"),
                (None, None) => {}
            }
        }
    }

    /// The pruned box of a quadratic region never sticks out of what
    /// plain bound propagation proves from the surface hull alone.
    #[test]
    fn enclosure_agrees_with_fbbt_on_quadratics() {
        let mut rng = ChaCha8Rng::seed_from_u64(84);
        for _ in 0..25 {
            let inst = random_quadratic(&mut rng);
            let region = region_description(&inst);
            let RegionConstraint::Halfspace { alpha, beta } = region.constraint.clone() else {
                panic!("quadratic instances have half-space regions");
            };
            // Surface-only run: same tree, side constraint disabled.
            let mut surface_only = region.clone();
            surface_only.constraint = RegionConstraint::Halfspace {
                alpha: vec![0.0; inst.domain().dim()],
                beta: 0.0,
            };
            let full = prune_enclosure(&region, 10, 1e-6);
            let surf = prune_enclosure(&surface_only, 10, 1e-6);
            let (Some(full_box), Some(surf_box)) = (&full.bounds, &surf.bounds) else {
                continue;
            };
            let Some(reference) = fbbt_halfspace(surf_box, &alpha, beta) else {
                panic!("full run kept leaves, reference cannot be empty");
            };
            assert!(
                contains_box(&reference, full_box, 1e-9),
                "enclosure {full_box} escapes fbbt reference {reference}"
            );
        }
    }
}
