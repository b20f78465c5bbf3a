//! Visibility predicates and descriptions of the visible region.
//!
//! A separation instance consists of a convex domain `C`, a polynomial
//! `g`, and a point `xbar` in `C` with `g(xbar) > 0`; the feasible set is
//! `S = { x in C : g(x) <= 0 }`.  A surface point `x` (with `g(x) = 0`)
//! is *visible* from `xbar` when the open segment towards `xbar` stays
//! strictly on the infeasible side — equivalently, when the restriction
//! `p(lambda) = g(x + lambda (xbar - x))` is positive on `(0, 1]`, which
//! the Sturm machinery decides exactly.
//!
//! Two descriptions of the visible region are available.  For quadratic
//! `g` the region is exactly a half-space intersected with the surface:
//! `{ g(x) = 0, alpha . x + beta >= 0 }` with `alpha = grad g(xbar)` and
//! `beta = b . xbar + 2c` (writing `g = x'Qx + b.x + c`).  For higher
//! degree the gradient condition `h(x) = <grad g(x), xbar - x> >= 0` is
//! necessary but in general not sufficient, and is kept as a polynomial
//! side constraint.

use crate::interval::{Interval, IntervalVector};
use crate::linprog::Sense;
use crate::multipoly::{MultiPoly, Point};
use crate::unipoly::UniPoly;
use std::fmt;

#[derive(Clone, Debug)]
pub enum VisibilityError {
    /// The instance violates its invariants (`xbar` outside the domain,
    /// `g(xbar) <= 0`, dimension mismatches).
    InvalidInstance(String),
    /// A query point lies outside the domain.
    OutsideDomain(String),
    /// The closed-form half-space requires a quadratic constraint.
    DegreeTooHigh(u32),
}

impl fmt::Display for VisibilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VisibilityError::InvalidInstance(m) => write!(f, "invalid instance: {m}"),
            VisibilityError::OutsideDomain(m) => write!(f, "outside domain: {m}"),
            VisibilityError::DegreeTooHigh(d) => {
                write!(f, "half-space form needs degree <= 2, got {d}")
            }
        }
    }
}

impl std::error::Error for VisibilityError {}

/// A linear side constraint of the domain: `a . x <= rhs` or `>= rhs`.
#[derive(Clone, Debug)]
pub struct LinearConstraint {
    pub a: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// A closed convex domain: a bounding box intersected with finitely many
/// linear inequalities.
#[derive(Clone, Debug)]
pub struct ConvexDomain {
    bounds: IntervalVector,
    linear: Vec<LinearConstraint>,
}

/// Absolute tolerance for domain membership checks.
pub const DOMAIN_TOL: f64 = 1e-9;

impl ConvexDomain {
    pub fn new(bounds: IntervalVector) -> Self {
        ConvexDomain {
            bounds,
            linear: Vec::new(),
        }
    }

    pub fn from_bounds(lo: &[f64], hi: &[f64]) -> Self {
        ConvexDomain::new(IntervalVector::from_bounds(lo, hi))
    }

    pub fn add_linear(&mut self, a: Vec<f64>, sense: Sense, rhs: f64) {
        assert_eq!(a.len(), self.dim(), "constraint dimension mismatch");
        assert!(
            a.iter().all(|v| v.is_finite()) && rhs.is_finite(),
            "constraint coefficients must be finite"
        );
        self.linear.push(LinearConstraint { a, sense, rhs });
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &IntervalVector {
        &self.bounds
    }

    pub fn linear(&self) -> &[LinearConstraint] {
        &self.linear
    }

    /// Membership with tolerance `tol` on every bound and constraint.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        for (xi, iv) in x.iter().zip(self.bounds.comps()) {
            if *xi < iv.lo - tol || *xi > iv.hi + tol {
                return false;
            }
        }
        for con in &self.linear {
            let lhs: f64 = con.a.iter().zip(x).map(|(a, v)| a * v).sum();
            let ok = match con.sense {
                Sense::Le => lhs <= con.rhs + tol,
                Sense::Ge => lhs >= con.rhs - tol,
                Sense::Eq => (lhs - con.rhs).abs() <= tol,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// The domain with its box replaced (linear constraints kept).
    pub fn with_bounds(&self, bounds: IntervalVector) -> Self {
        assert_eq!(bounds.dim(), self.dim());
        ConvexDomain {
            bounds,
            linear: self.linear.clone(),
        }
    }
}

/// One separation instance: domain, constraint polynomial, and the
/// infeasible point to separate.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    g: MultiPoly,
    domain: ConvexDomain,
    xbar: Point,
    surface_tol: f64,
}

impl ProblemInstance {
    /// Validates `xbar in C` (tolerance `1e-9`) and `g(xbar) > 0`.
    pub fn new(g: MultiPoly, domain: ConvexDomain, xbar: Point) -> Result<Self, VisibilityError> {
        if g.nvars() != domain.dim() || xbar.dim() != domain.dim() {
            return Err(VisibilityError::InvalidInstance(format!(
                "dimensions disagree: g has {}, domain {}, xbar {}",
                g.nvars(),
                domain.dim(),
                xbar.dim()
            )));
        }
        if !domain.contains(&xbar.coords, DOMAIN_TOL) {
            return Err(VisibilityError::InvalidInstance(
                "xbar lies outside the domain".into(),
            ));
        }
        let at_xbar = g.eval(&xbar.coords);
        if !(at_xbar > 0.0) {
            return Err(VisibilityError::InvalidInstance(format!(
                "g(xbar) = {at_xbar} must be positive"
            )));
        }
        let scale = g.interval_eval(domain.bounds()).magnitude();
        Ok(ProblemInstance {
            g,
            domain,
            xbar,
            surface_tol: 1e-9 * (1.0 + scale),
        })
    }

    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    pub fn domain(&self) -> &ConvexDomain {
        &self.domain
    }

    pub fn xbar(&self) -> &Point {
        &self.xbar
    }

    /// The band `|g(x)| <= surface_tol` counts as "on the surface".
    pub fn surface_tol(&self) -> f64 {
        self.surface_tol
    }

    /// Override the on-surface tolerance (default: scaled from the range
    /// of `g` over the domain box).
    pub fn with_surface_tol(mut self, tol: f64) -> Self {
        assert!(tol > 0.0, "tolerance must be positive");
        self.surface_tol = tol;
        self
    }

    /// The segment restriction `p(lambda) = g(x + lambda (xbar - x))`.
    pub fn segment_poly(&self, x: &Point) -> UniPoly {
        self.g.restrict_to_segment(&x.coords, &self.xbar.coords)
    }
}

/// Is `x` a visible point of `S` from `xbar`?  True exactly when `x` lies
/// on the surface (within the instance tolerance band) and the segment
/// polynomial is strictly positive on `(0, 1]` — decided by Sturm counts,
/// not sampling.
pub fn is_visible(inst: &ProblemInstance, x: &Point) -> Result<bool, VisibilityError> {
    check_in_domain(inst, x)?;
    let gx = inst.g.eval(&x.coords);
    if gx.abs() > inst.surface_tol {
        return Ok(false);
    }
    Ok(inst.segment_poly(x).is_positive_on_unit_halfopen())
}

/// Is `x` in the relaxation `R_S(xbar)`?  Like visibility but the segment
/// polynomial only needs to be nonnegative on the closed segment, so
/// grazing contacts with the surface are allowed.
pub fn in_relaxation(inst: &ProblemInstance, x: &Point) -> Result<bool, VisibilityError> {
    check_in_domain(inst, x)?;
    let gx = inst.g.eval(&x.coords);
    if gx.abs() > inst.surface_tol {
        return Ok(false);
    }
    Ok(inst.segment_poly(x).is_nonnegative_on_unit())
}

fn check_in_domain(inst: &ProblemInstance, x: &Point) -> Result<(), VisibilityError> {
    if !inst.domain.contains(&x.coords, DOMAIN_TOL) {
        return Err(VisibilityError::OutsideDomain(format!(
            "point {:?} is not in the domain",
            x.coords
        )));
    }
    Ok(())
}

/// The quadratic decomposition `g = x'Qx + b.x + c` with `Q` symmetric.
fn quadratic_parts(g: &MultiPoly) -> Result<(Vec<Vec<f64>>, Vec<f64>, f64), VisibilityError> {
    if g.degree() > 2 {
        return Err(VisibilityError::DegreeTooHigh(g.degree()));
    }
    let n = g.nvars();
    let mut q = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    let mut c = 0.0;
    for term in g.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| term.exps[i] > 0).collect();
        match term.total_degree() {
            0 => c += term.coeff,
            1 => b[vars[0]] += term.coeff,
            2 => {
                if vars.len() == 1 {
                    q[vars[0]][vars[0]] += term.coeff;
                } else {
                    q[vars[0]][vars[1]] += term.coeff / 2.0;
                    q[vars[1]][vars[0]] += term.coeff / 2.0;
                }
            }
            _ => unreachable!("degree checked above"),
        }
    }
    Ok((q, b, c))
}

/// The closed-form half-space of the visible region of a quadratic
/// constraint: returns `(alpha, beta)` with the region
/// `{ g(x) = 0, alpha . x + beta >= 0 }`, where `alpha = grad g(xbar)
/// = 2 Q xbar + b` and `beta = b . xbar + 2c`.
pub fn polar_halfspace(g: &MultiPoly, xbar: &Point) -> Result<(Vec<f64>, f64), VisibilityError> {
    let n = g.nvars();
    assert_eq!(xbar.dim(), n, "xbar dimension mismatch");
    let (q, b, c) = quadratic_parts(g)?;
    let alpha: Vec<f64> = (0..n)
        .map(|i| {
            2.0 * q[i]
                .iter()
                .zip(&xbar.coords)
                .map(|(qij, xj)| qij * xj)
                .sum::<f64>()
                + b[i]
        })
        .collect();
    let beta = b
        .iter()
        .zip(&xbar.coords)
        .map(|(bi, xi)| bi * xi)
        .sum::<f64>()
        + 2.0 * c;
    Ok((alpha, beta))
}

/// Which description of the visible region an instance admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    /// Quadratic `g`: the description is exact.
    ExactQuadratic,
    /// Higher degree: the gradient condition is necessary only.
    GradientRelaxation,
}

/// The side constraint accompanying the surface equation.
#[derive(Clone, Debug)]
pub enum RegionConstraint {
    /// `alpha . x + beta >= 0`.
    Halfspace { alpha: Vec<f64>, beta: f64 },
    /// `h(x) >= 0` for a polynomial `h`.
    Polynomial(MultiPoly),
}

/// A computable description of (a superset of) the visible region:
/// the surface `g(x) = 0`, a side constraint, and the ambient domain.
#[derive(Clone, Debug)]
pub struct RegionDescription {
    pub kind: RegionKind,
    pub surface: MultiPoly,
    pub constraint: RegionConstraint,
    pub domain: ConvexDomain,
}

impl RegionDescription {
    /// Value of the side constraint at a point (`>= 0` means satisfied).
    pub fn side_value(&self, x: &[f64]) -> f64 {
        match &self.constraint {
            RegionConstraint::Halfspace { alpha, beta } => {
                alpha.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + beta
            }
            RegionConstraint::Polynomial(h) => h.eval(x),
        }
    }

    /// Interval enclosure of the side constraint over a box; a negative
    /// upper bound certifies that no visible point lives in the box.
    pub fn side_interval(&self, cell: &IntervalVector) -> Interval {
        match &self.constraint {
            RegionConstraint::Halfspace { alpha, beta } => {
                let mut acc = Interval::point(*beta);
                for (a, iv) in alpha.iter().zip(cell.comps()) {
                    acc = acc + iv.scale(*a);
                }
                acc
            }
            RegionConstraint::Polynomial(h) => h.interval_eval(cell),
        }
    }
}

/// The best available description of the visible region: the exact
/// half-space form for quadratics, the gradient relaxation
/// `h(x) = <grad g(x), xbar - x> >= 0` otherwise.
pub fn region_description(inst: &ProblemInstance) -> RegionDescription {
    let g = inst.g();
    let n = g.nvars();
    let constraint = if g.degree() <= 2 {
        let (alpha, beta) = polar_halfspace(g, inst.xbar()).expect("degree checked");
        RegionConstraint::Halfspace { alpha, beta }
    } else {
        let mut h = MultiPoly::zero(n);
        for i in 0..n {
            let lin = MultiPoly::constant(n, inst.xbar().coords[i])
                .add(&MultiPoly::variable(n, i).scale(-1.0));
            h = h.add(&g.partial(i).mul(&lin));
        }
        RegionConstraint::Polynomial(h)
    };
    RegionDescription {
        kind: if g.degree() <= 2 {
            RegionKind::ExactQuadratic
        } else {
            RegionKind::GradientRelaxation
        },
        surface: g.clone(),
        constraint,
        domain: inst.domain().clone(),
    }
}

/// Largest `t >= 0` with `xbar + t * dir` still inside the domain, or
/// `None` if the ray exits immediately (or never, for unbounded data —
/// excluded here since boxes are finite).
fn ray_exit(domain: &ConvexDomain, xbar: &[f64], dir: &[f64]) -> Option<f64> {
    let mut t_max = f64::INFINITY;
    for (i, iv) in domain.bounds().comps().iter().enumerate() {
        if dir[i] > 1e-14 {
            t_max = t_max.min((iv.hi - xbar[i]) / dir[i]);
        } else if dir[i] < -1e-14 {
            t_max = t_max.min((iv.lo - xbar[i]) / dir[i]);
        }
    }
    for con in domain.linear() {
        let a_dir: f64 = con.a.iter().zip(dir).map(|(a, d)| a * d).sum();
        let a_x: f64 = con.a.iter().zip(xbar).map(|(a, x)| a * x).sum();
        match con.sense {
            Sense::Le if a_dir > 1e-14 => t_max = t_max.min((con.rhs - a_x) / a_dir),
            Sense::Ge if a_dir < -1e-14 => t_max = t_max.min((con.rhs - a_x) / a_dir),
            Sense::Eq if a_dir.abs() > 1e-14 => return None,
            _ => {}
        }
    }
    if !t_max.is_finite() || t_max <= 1e-12 {
        None
    } else {
        Some(t_max)
    }
}

/// All crossings of the surface `g = 0` along the ray `xbar + t * dir`
/// within the domain, ordered by increasing distance from `xbar`.  Root
/// finding runs on the exact segment restriction, so tangential contacts
/// are found as even-multiplicity roots.
pub fn surface_points_along(inst: &ProblemInstance, dir: &[f64]) -> Vec<Point> {
    assert_eq!(dir.len(), inst.domain().dim());
    let xbar = &inst.xbar().coords;
    let Some(t_max) = ray_exit(inst.domain(), xbar, dir) else {
        return Vec::new();
    };
    let far: Vec<f64> = xbar.iter().zip(dir).map(|(x, d)| x + t_max * d).collect();
    // p(lambda) = g(far + lambda (xbar - far)); lambda = 1 - t / t_max.
    let p = inst.g.restrict_to_segment(&far, xbar);
    let mut hits: Vec<Point> = Vec::new();
    let mut roots = p.real_roots(0.0, 1.0);
    // Exclude the anchor end: g(xbar) > 0 keeps lambda = 1 off the root
    // list already; order by increasing t means decreasing lambda.
    roots.sort_by(|a, b| b.0.total_cmp(&a.0));
    for (lam, _mult) in roots {
        let t = (1.0 - lam) * t_max;
        if t <= 1e-12 {
            continue;
        }
        let x: Vec<f64> = xbar.iter().zip(dir).map(|(xi, d)| xi + t * d).collect();
        if inst.g.eval(&x).abs() <= inst.surface_tol && inst.domain.contains(&x, DOMAIN_TOL) {
            hits.push(Point::new(x));
        }
    }
    hits
}

/// The first surface crossing along a ray from `xbar`, which is visible
/// by construction (the open segment back to `xbar` crosses nothing).
pub fn first_surface_hit(inst: &ProblemInstance, dir: &[f64]) -> Option<Point> {
    surface_points_along(inst, dir).into_iter().next()
}
