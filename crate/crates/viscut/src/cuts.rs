//! Affine underestimators and separating cuts.
//!
//! Over a box `D`, every monomial of degree up to three admits a short
//! list of affine underestimators: linear terms are exact, squares use
//! tangents (or the secant, for negated squares), bilinear terms use the
//! McCormick inequalities, and cubic monomials factor through an
//! auxiliary product variable and one more McCormick step.  Summing one
//! choice per term gives an affine `L` with `L <= g` on `D`; among the
//! candidates for each term this module keeps the one with the largest
//! value at the separation anchor `xbar` (ties broken by the
//! lexicographically smallest coefficient vector), which is the rule
//! that makes the underestimator as strong as possible where it is
//! needed.
//!
//! When `L(xbar) > 0`, the inequality `L(x) <= 0` — valid for the
//! feasible set, since `L <= g <= 0` there — rescales to the normalized
//! separating cut `alpha . (x - xbar) >= 1` with `alpha = -a / L(xbar)`.
//! Shrinking `D` to an enclosure of the visible points keeps every such
//! cut valid for the original feasible set while tightening `L`, which
//! is the point of the whole pipeline.

use crate::interval::{Interval, IntervalVector};
use crate::multipoly::{MultiPoly, Point};
use crate::visibility::{ProblemInstance, DOMAIN_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Clone, Debug)]
pub enum CutError {
    /// A monomial outside the supported degree range (or shape).
    UnsupportedTerm(String),
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::UnsupportedTerm(m) => write!(f, "unsupported term: {m}"),
        }
    }
}

impl std::error::Error for CutError {}

/// An affine function `a . x + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFunction {
    pub a: Vec<f64>,
    pub b: f64,
}

impl AffineFunction {
    pub fn zero(n: usize) -> Self {
        AffineFunction {
            a: vec![0.0; n],
            b: 0.0,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.a.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + self.b
    }

    fn add_assign(&mut self, other: &AffineFunction) {
        for (a, o) in self.a.iter_mut().zip(&other.a) {
            *a += o;
        }
        self.b += other.b;
    }

    fn scaled(&self, c: f64) -> AffineFunction {
        AffineFunction {
            a: self.a.iter().map(|v| c * v).collect(),
            b: c * self.b,
        }
    }
}

impl fmt::Display for AffineFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.b)?;
        for (i, a) in self.a.iter().enumerate() {
            if *a != 0.0 {
                write!(
                    f,
                    " {} {:.6}*x{}",
                    if *a < 0.0 { "-" } else { "+" },
                    a.abs(),
                    i + 1
                )?;
            }
        }
        Ok(())
    }
}

/// A separating cut `alpha . (x - xbar) >= rhs` anchored at `xbar`.
#[derive(Clone, Debug)]
pub struct Cut {
    pub alpha: Vec<f64>,
    pub rhs: f64,
    pub xbar: Vec<f64>,
}

impl Cut {
    /// Left-hand side `alpha . (x - xbar)`.
    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.alpha
            .iter()
            .zip(x)
            .zip(&self.xbar)
            .map(|((a, v), c)| a * (v - c))
            .sum()
    }

    /// Positive when the cut is violated at `x`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.rhs - self.lhs(x)
    }
}

// ---------------------------------------------------------------------
// Per-term candidate underestimators.
// ---------------------------------------------------------------------

/// Indicator vector `e_i` as an affine function.
fn coord(n: usize, i: usize, w: f64) -> AffineFunction {
    let mut a = vec![0.0; n];
    a[i] = w;
    AffineFunction { a, b: 0.0 }
}

/// The two McCormick underestimators of `x_i x_j` over the box.
fn bilinear_unders(
    n: usize,
    i: usize,
    j: usize,
    bi: Interval,
    bj: Interval,
) -> Vec<AffineFunction> {
    let mk = |ci: f64, cj: f64, c0: f64| {
        let mut f = coord(n, i, ci);
        f.add_assign(&coord(n, j, cj));
        f.b += c0;
        f
    };
    vec![
        mk(bj.lo, bi.lo, -bi.lo * bj.lo),
        mk(bj.hi, bi.hi, -bi.hi * bj.hi),
    ]
}

/// The two McCormick overestimators of `x_i x_j` over the box.
fn bilinear_overs(n: usize, i: usize, j: usize, bi: Interval, bj: Interval) -> Vec<AffineFunction> {
    let mk = |ci: f64, cj: f64, c0: f64| {
        let mut f = coord(n, i, ci);
        f.add_assign(&coord(n, j, cj));
        f.b += c0;
        f
    };
    vec![
        mk(bj.lo, bi.hi, -bi.hi * bj.lo),
        mk(bj.hi, bi.lo, -bi.lo * bj.hi),
    ]
}

/// Tangent underestimators of `x_i^2` at both endpoints.
fn square_unders(n: usize, i: usize, bi: Interval) -> Vec<AffineFunction> {
    let tangent = |t: f64| {
        let mut f = coord(n, i, 2.0 * t);
        f.b = -t * t;
        f
    };
    vec![tangent(bi.lo), tangent(bi.hi)]
}

/// The secant overestimator of `x_i^2`.
fn square_overs(n: usize, i: usize, bi: Interval) -> Vec<AffineFunction> {
    let mut f = coord(n, i, bi.lo + bi.hi);
    f.b = -bi.lo * bi.hi;
    vec![f]
}

/// Degree-2 building block: affine under/over estimators of a monomial
/// `x_i x_j` (i == j means the square).
fn quad_bounds(
    n: usize,
    i: usize,
    j: usize,
    box_: &IntervalVector,
    under: bool,
) -> Vec<AffineFunction> {
    if i == j {
        if under {
            square_unders(n, i, box_.comp(i))
        } else {
            square_overs(n, i, box_.comp(i))
        }
    } else if under {
        bilinear_unders(n, i, j, box_.comp(i), box_.comp(j))
    } else {
        bilinear_overs(n, i, j, box_.comp(i), box_.comp(j))
    }
}

/// Candidate affine bounds for `w * x_k` where `w` abbreviates the
/// monomial `x_i x_j` with known interval range: one McCormick step in
/// `(w, x_k)`, then the `w`-coefficient decides whether `w` itself is
/// replaced by an under- or overestimator.
fn product_candidates(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    box_: &IntervalVector,
    under: bool,
) -> Vec<AffineFunction> {
    let w_range = if i == j {
        box_.comp(i).powi(2)
    } else {
        box_.comp(i) * box_.comp(j)
    };
    let xk = box_.comp(k);
    // Affine-in-(w, xk) pieces (cw, ck, c0): cw*w + ck*xk + c0.
    let pieces: Vec<(f64, f64, f64)> = if under {
        vec![
            (xk.lo, w_range.lo, -w_range.lo * xk.lo),
            (xk.hi, w_range.hi, -w_range.hi * xk.hi),
        ]
    } else {
        vec![
            (xk.lo, w_range.hi, -w_range.hi * xk.lo),
            (xk.hi, w_range.lo, -w_range.lo * xk.hi),
        ]
    };
    let mut out = Vec::new();
    for (cw, ck, c0) in pieces {
        // Keeping the bound direction requires matching the sign of cw:
        // a nonnegative w-coefficient wants w bounded the same way.
        let w_bounds = quad_bounds(n, i, j, box_, if under { cw >= 0.0 } else { cw < 0.0 });
        for wb in w_bounds {
            let mut f = wb.scaled(cw);
            f.add_assign(&coord(n, k, ck));
            f.b += c0;
            out.push(f);
        }
    }
    out
}

/// Candidate affine underestimators of the signed monomial
/// `c * prod x_i^{e_i}` over the box.
fn term_candidates(
    n: usize,
    c: f64,
    exps: &[u32],
    box_: &IntervalVector,
) -> Result<Vec<AffineFunction>, CutError> {
    let vars: Vec<usize> = (0..n)
        .flat_map(|i| std::iter::repeat(i).take(exps[i] as usize))
        .collect();
    let under = c > 0.0;
    let raw = match vars.len() {
        0 => {
            let mut f = AffineFunction::zero(n);
            f.b = 1.0;
            vec![f]
        }
        1 => vec![coord(n, vars[0], 1.0)],
        2 => quad_bounds(n, vars[0], vars[1], box_, under),
        3 => product_candidates(n, vars[0], vars[1], vars[2], box_, under),
        d => {
            return Err(CutError::UnsupportedTerm(format!(
                "monomial of degree {d} (coefficient {c}); only degree <= 3 is supported"
            )))
        }
    };
    Ok(raw.into_iter().map(|f| f.scaled(c)).collect())
}

/// Picks the candidate with the largest value at `xbar`; exact ties go
/// to the lexicographically smallest coefficient vector.
fn select_candidate(cands: Vec<AffineFunction>, xbar: &[f64]) -> AffineFunction {
    cands
        .into_iter()
        .min_by(|f, g| {
            let (vf, vg) = (f.eval(xbar), g.eval(xbar));
            vg.total_cmp(&vf).then_with(|| {
                for (a, b) in f.a.iter().zip(&g.a) {
                    match a.total_cmp(b) {
                        std::cmp::Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                f.b.total_cmp(&g.b)
            })
        })
        .expect("every term has at least one candidate")
}

/// Term-wise affine underestimator of `g` over the box: `L(x) <= g(x)`
/// for every `x` in the box, with each term's facet chosen by the
/// value-at-`xbar` rule.  Monomials must have degree at most three.
pub fn mccormick_under(
    g: &MultiPoly,
    box_: &IntervalVector,
    xbar: &Point,
) -> Result<AffineFunction, CutError> {
    let n = g.nvars();
    assert_eq!(box_.dim(), n, "box dimension mismatch");
    assert_eq!(xbar.dim(), n, "xbar dimension mismatch");
    let mut total = AffineFunction::zero(n);
    for term in g.terms() {
        let cands = term_candidates(n, term.coeff, &term.exps, box_)?;
        total.add_assign(&select_candidate(cands, &xbar.coords));
    }
    Ok(total)
}

/// The gradient cut of the affine underestimator over `D`: when
/// `L(xbar) > 0`, the valid inequality `L(x) <= 0` normalizes to
/// `alpha . (x - xbar) >= 1` with `alpha = -a / L(xbar)`.  Returns
/// `None` when `L(xbar)` is not strictly positive (no separation).
pub fn gradient_cut(
    g: &MultiPoly,
    d: &IntervalVector,
    xbar: &Point,
) -> Result<Option<Cut>, CutError> {
    let under = mccormick_under(g, d, xbar)?;
    let value = under.eval(&xbar.coords);
    if value <= 1e-9 {
        return Ok(None);
    }
    Ok(Some(Cut {
        alpha: under.a.iter().map(|a| -a / value).collect(),
        rhs: 1.0,
        xbar: xbar.coords.clone(),
    }))
}

/// Outcome of sampling-based cut validation.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub samples_drawn: usize,
    pub feasible: usize,
    /// Largest `rhs - lhs` over feasible samples; `<= 1e-7` passes.
    pub max_violation: f64,
    /// False when fewer than 10 feasible points were found.
    pub conclusive: bool,
}

/// Rejection-samples the feasible set `S = { x in C : g(x) <= 0 }` and
/// reports the worst violation of the cut.
pub fn validate_cut(
    cut: &Cut,
    inst: &ProblemInstance,
    samples: usize,
    seed: u64,
) -> ValidationReport {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = inst.domain().bounds();
    let mut feasible = 0usize;
    let mut max_violation = f64::NEG_INFINITY;
    for _ in 0..samples {
        let x: Vec<f64> = bounds
            .comps()
            .iter()
            .map(|iv| {
                if iv.width() == 0.0 {
                    iv.lo
                } else {
                    rng.gen_range(iv.lo..=iv.hi)
                }
            })
            .collect();
        if inst.g().eval(&x) > 0.0 || !inst.domain().contains(&x, DOMAIN_TOL) {
            continue;
        }
        feasible += 1;
        max_violation = max_violation.max(cut.violation(&x));
    }
    ValidationReport {
        samples_drawn: samples,
        feasible,
        max_violation: if feasible == 0 { 0.0 } else { max_violation },
        conclusive: feasible >= 10,
    }
}

/// Relative strength of two cuts over a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutVerdict {
    /// Every point cut off by `c2` is cut off by `c1` (weak dominance:
    /// identical cuts land here).
    C1Dominates,
    C2Dominates,
    Incomparable,
}

/// Compares cut margins `lhs - rhs` pointwise over the box: `c1`
/// dominates when its margin never exceeds `c2`'s.  Decided by an exact
/// interval bound on the (affine) difference, confirmed on random
/// samples for defense in depth.
pub fn compare_cuts(c1: &Cut, c2: &Cut, box_: &IntervalVector, samples: usize) -> CutVerdict {
    assert_eq!(c1.xbar, c2.xbar, "cuts must share a frame");
    let margin_gap = |a: &Cut, b: &Cut| -> Interval {
        // (lhs_a - rhs_a) - (lhs_b - rhs_b) as an affine interval bound.
        let mut acc = Interval::point(b.rhs - a.rhs);
        for (i, iv) in box_.comps().iter().enumerate() {
            let coeff = a.alpha[i] - b.alpha[i];
            acc = acc + (*iv - Interval::point(a.xbar[i])).scale(coeff);
        }
        acc
    };
    let sample_confirms = |a: &Cut, b: &Cut| -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..samples).all(|_| {
            let x: Vec<f64> = box_
                .comps()
                .iter()
                .map(|iv| {
                    if iv.width() == 0.0 {
                        iv.lo
                    } else {
                        rng.gen_range(iv.lo..=iv.hi)
                    }
                })
                .collect();
            (a.lhs(&x) - a.rhs) - (b.lhs(&x) - b.rhs) <= 1e-7
        })
    };
    if margin_gap(c1, c2).hi <= 1e-9 && sample_confirms(c1, c2) {
        return CutVerdict::C1Dominates;
    }
    if margin_gap(c2, c1).hi <= 1e-9 && sample_confirms(c2, c1) {
        return CutVerdict::C2Dominates;
    }
    CutVerdict::Incomparable
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::fixtures::quad3;
    use crate::visibility::ConvexDomain;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    fn origin(n: usize) -> Point {
        Point::new(vec![0.0; n])
    }

    /// The box B of the running quadratic example.
    fn box_b() -> IntervalVector {
        IntervalVector::from_bounds(&[-0.1, 0.0, 0.0], &[2.0, 2.0, 2.0])
    }

    /// The tightest box R around the visible points of the example.
    fn box_r() -> IntervalVector {
        let s5 = 5.0f64.sqrt();
        IntervalVector::from_bounds(
            &[-0.1, 0.0, 0.0],
            &[1.0, (23.0 + 3.0 * s5) / 20.0, (19.0 + 3.0 * s5) / 20.0],
        )
    }

    #[test]
    fn bilinear_over_unit_box_picks_zero() {
        // x1 x2 over [0,1]^2 from the origin: candidates 0 and
        // x1 + x2 - 1; the value-at-xbar rule keeps 0.
        let g = MultiPoly::from_terms(2, &[(1.0, &[1, 1])]);
        let box_ = IntervalVector::from_bounds(&[0.0, 0.0], &[1.0, 1.0]);
        let under = mccormick_under(&g, &box_, &origin(2)).unwrap();
        assert_eq!(under.a, vec![0.0, 0.0]);
        assert_eq!(under.b, 0.0);
    }

    #[test]
    fn quad_example_underestimator_over_b() {
        let under = mccormick_under(&quad3(), &box_b(), &origin(3)).unwrap();
        // L(x) = 1 - x1 - 3 x2 - 1.1 x3.
        assert!((under.b - 1.0).abs() < 1e-12);
        assert!((under.a[0] + 1.0).abs() < 1e-12);
        assert!((under.a[1] + 3.0).abs() < 1e-12);
        assert!((under.a[2] + 1.1).abs() < 1e-12);
    }

    #[test]
    fn quad_example_underestimator_over_r() {
        let under = mccormick_under(&quad3(), &box_r(), &origin(3)).unwrap();
        // L(x) = 1 - x1 - 2 x2 - 1.1 x3: tightening the box improves
        // the x2 coefficient from 3 to 2.
        assert!((under.b - 1.0).abs() < 1e-12);
        assert!((under.a[0] + 1.0).abs() < 1e-12);
        assert!((under.a[1] + 2.0).abs() < 1e-12);
        assert!((under.a[2] + 1.1).abs() < 1e-12);
    }

    #[test]
    fn affine_g_is_its_own_cut() {
        let g = MultiPoly::from_terms(2, &[(1.0, &[0, 0]), (-1.0, &[1, 0]), (-1.0, &[0, 1])]);
        let box_ = IntervalVector::from_bounds(&[0.0, 0.0], &[1.0, 1.0]);
        let cut = gradient_cut(&g, &box_, &origin(2)).unwrap().unwrap();
        assert_eq!(cut.alpha, vec![1.0, 1.0]);
        assert_eq!(cut.rhs, 1.0);
    }

    #[test]
    fn vanishing_underestimator_yields_no_cut() {
        // g = x1 x2 over [0,1]^2: L = 0 at the origin, no separation.
        let g = MultiPoly::from_terms(2, &[(1.0, &[1, 1])]);
        let box_ = IntervalVector::from_bounds(&[0.0, 0.0], &[1.0, 1.0]);
        assert!(gradient_cut(&g, &box_, &origin(2)).unwrap().is_none());
    }

    #[test]
    fn degree_four_term_is_rejected() {
        let g = MultiPoly::from_terms(2, &[(1.0, &[2, 2])]);
        let box_ = IntervalVector::from_bounds(&[0.0, 0.0], &[1.0, 1.0]);
        assert!(matches!(
            mccormick_under(&g, &box_, &origin(2)),
            Err(CutError::UnsupportedTerm(_))
        ));
    }

    fn quad_instance() -> ProblemInstance {
        ProblemInstance::new(
            quad3(),
            ConvexDomain::from_bounds(&[-0.1, 0.0, 0.0], &[2.0, 2.0, 2.0]),
            origin(3),
        )
        .unwrap()
    }

    #[test]
    fn worked_cuts_validate_against_the_feasible_set() {
        let inst = quad_instance();
        let cut_b = gradient_cut(inst.g(), &box_b(), inst.xbar())
            .unwrap()
            .unwrap();
        let report = validate_cut(&cut_b, &inst, 20_000, 71);
        assert!(report.conclusive, "only {} feasible", report.feasible);
        assert!(
            report.max_violation <= 1e-7,
            "cut over B violated by {}",
            report.max_violation
        );

        // The tightened cut stays valid for the FULL feasible set even
        // though its box only encloses the visible points.
        let cut_r = gradient_cut(inst.g(), &box_r(), inst.xbar())
            .unwrap()
            .unwrap();
        let report = validate_cut(&cut_r, &inst, 20_000, 72);
        assert!(report.conclusive);
        assert!(
            report.max_violation <= 1e-7,
            "cut over R violated by {}",
            report.max_violation
        );

        // Flipping a cut makes it wildly invalid.
        let flipped = Cut {
            alpha: cut_b.alpha.iter().map(|a| -a).collect(),
            rhs: cut_b.rhs,
            xbar: cut_b.xbar.clone(),
        };
        let report = validate_cut(&flipped, &inst, 20_000, 73);
        assert!(report.max_violation > 0.5);
    }

    #[test]
    fn tightened_cut_dominates_and_ties_are_weak() {
        let inst = quad_instance();
        let cut_b = gradient_cut(inst.g(), &box_b(), inst.xbar())
            .unwrap()
            .unwrap();
        let cut_r = gradient_cut(inst.g(), &box_r(), inst.xbar())
            .unwrap()
            .unwrap();
        // Over B (where x2 >= 0) the R-cut cuts off at least as much.
        assert_eq!(
            compare_cuts(&cut_r, &cut_b, &box_b(), 500),
            CutVerdict::C1Dominates
        );
        assert_eq!(
            compare_cuts(&cut_b, &cut_r, &box_b(), 500),
            CutVerdict::C2Dominates
        );
        // Identical cuts weakly dominate themselves.
        assert_eq!(
            compare_cuts(&cut_b, &cut_b, &box_b(), 500),
            CutVerdict::C1Dominates
        );
    }

    #[test]
    fn orthogonal_cuts_are_incomparable() {
        let c1 = Cut {
            alpha: vec![1.0, 0.0],
            rhs: 1.0,
            xbar: vec![0.0, 0.0],
        };
        let c2 = Cut {
            alpha: vec![0.0, 1.0],
            rhs: 1.0,
            xbar: vec![0.0, 0.0],
        };
        let box_ = IntervalVector::from_bounds(&[0.0, 0.0], &[2.0, 2.0]);
        assert_eq!(compare_cuts(&c1, &c2, &box_, 500), CutVerdict::Incomparable);
    }

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cubic(rng: &mut ChaCha8Rng, n: usize) -> MultiPoly {
        let mut terms: Vec<(f64, Vec<u32>)> = Vec::new();
        for _ in 0..rng.gen_range(2..=7) {
            let mut e = vec![0u32; n];
            let mut left = rng.gen_range(0..=3u32);
            for item in e.iter_mut() {
                let take = rng.gen_range(0..=left);
                *item = take;
                left -= take;
            }
            terms.push((rng.gen_range(-3.0..3.0), e));
        }
        let raw: Vec<(f64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        MultiPoly::from_terms(n, &raw)
    }

    /// The underestimation contract: L <= g everywhere on the box, for
    /// random polynomials with squares, bilinears, and cubic monomials.
    #[test]
    fn underestimates_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        for _ in 0..200 {
            let n = rng.gen_range(2..=3);
            let g = random_cubic(&mut rng, n);
            let lo: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..0.0)).collect();
            let hi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.5)).collect();
            let box_ = IntervalVector::from_bounds(&lo, &hi);
            let xbar: Vec<f64> = (0..n).map(|i| rng.gen_range(lo[i]..hi[i])).collect();
            let under = mccormick_under(&g, &box_, &pt(&xbar)).unwrap();
            for _ in 0..60 {
                let x: Vec<f64> = (0..n).map(|i| rng.gen_range(lo[i]..=hi[i])).collect();
                let (lv, gv) = (under.eval(&x), g.eval(&x));
                assert!(
                    lv <= gv + 1e-9,
                    "underestimation failed: L = {lv}, g = {gv} at {x:?}"
                );
            }
        }
    }

    /// Shrinking the box around xbar never weakens the underestimator at
    /// xbar under the value-at-xbar facet rule.
    #[test]
    fn tighter_boxes_improve_the_value_at_xbar() {
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        for _ in 0..200 {
            let n = rng.gen_range(2..=3);
            let g = random_cubic(&mut rng, n);
            let lo: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..-0.5)).collect();
            let hi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
            let xbar: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.4..0.4)).collect();
            // Shrink towards xbar, keeping xbar inside.
            let lo2: Vec<f64> = (0..n)
                .map(|i| xbar[i] + (lo[i] - xbar[i]) * rng.gen_range(0.2..1.0))
                .collect();
            let hi2: Vec<f64> = (0..n)
                .map(|i| xbar[i] + (hi[i] - xbar[i]) * rng.gen_range(0.2..1.0))
                .collect();
            let big = IntervalVector::from_bounds(&lo, &hi);
            let small = IntervalVector::from_bounds(&lo2, &hi2);
            let l_big = mccormick_under(&g, &big, &pt(&xbar)).unwrap();
            let l_small = mccormick_under(&g, &small, &pt(&xbar)).unwrap();
            assert!(
                l_small.eval(&xbar) >= l_big.eval(&xbar) - 1e-9,
                "tightening lost ground at xbar"
            );
        }
    }
}
