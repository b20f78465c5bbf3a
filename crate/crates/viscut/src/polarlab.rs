//! A laboratory for reverse polars of finite point sets.
//!
//! For a set `S` and a separation anchor `xbar`, the reverse polar is
//!
//! ```text
//! S^xbar = { alpha : alpha . (x - xbar) >= 1  for all x in S }
//! ```
//!
//! — the collection of all cutting planes that separate `xbar` from `S`
//! with margin one.  The structural theory says small subsets of `S`
//! already generate the whole polar: the points radially visible from
//! `xbar` suffice, the points visible with respect to the convex hull
//! suffice, and among those the hull vertices suffice.  None of that is
//! obvious numerically, which is what this module is for: every claim
//! about a finite set is reduced to small linear programs and checked by
//! the simplex solver, so the theorems can be exercised on thousands of
//! random instances.
//!
//! All polyhedron queries are tolerance-based (`1e-7` on the margin-one
//! constraints) and the emptiness test is answered twice — once as a
//! feasibility LP on `alpha`, once as a convex-combination LP certifying
//! `xbar` inside the hull — with disagreement reported as an error rather
//! than silently trusting either run.

use crate::linprog::{LinearProgram, LpError, LpSolution, Sense};
use crate::multipoly::Point;
use rand::Rng;
use std::fmt;

/// Margin tolerance for "row is satisfied / implied" tests.
const ROW_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub enum PolarLabError {
    /// Constructor or precondition violations (duplicate points, dimension
    /// mismatch, `xbar` inside the hull where it must not be, ...).
    InvalidInput(String),
    /// The LP solver broke down, or two redundant computations of the same
    /// fact disagreed.
    Numerical(String),
}

impl fmt::Display for PolarLabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarLabError::InvalidInput(m) => write!(f, "invalid point set: {m}"),
            PolarLabError::Numerical(m) => write!(f, "polar lab numerical failure: {m}"),
        }
    }
}

impl std::error::Error for PolarLabError {}

impl From<LpError> for PolarLabError {
    fn from(e: LpError) -> Self {
        PolarLabError::Numerical(e.to_string())
    }
}

/// A finite point set together with the anchor `xbar` it is to be
/// separated from.  Points are pairwise distinct and distinct from `xbar`
/// (tolerance `1e-9`).
#[derive(Clone, Debug)]
pub struct FinitePointSet {
    points: Vec<Point>,
    xbar: Point,
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl FinitePointSet {
    pub fn new(points: Vec<Point>, xbar: Point) -> Result<Self, PolarLabError> {
        if points.is_empty() {
            return Err(PolarLabError::InvalidInput("no points".into()));
        }
        let n = xbar.dim();
        for p in &points {
            if p.dim() != n {
                return Err(PolarLabError::InvalidInput(format!(
                    "point dimension {} != {}",
                    p.dim(),
                    n
                )));
            }
            if dist(&p.coords, &xbar.coords) <= 1e-9 {
                return Err(PolarLabError::InvalidInput(
                    "a point coincides with xbar".into(),
                ));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if dist(&points[i].coords, &points[j].coords) <= 1e-9 {
                    return Err(PolarLabError::InvalidInput(format!(
                        "points {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(FinitePointSet { points, xbar })
    }

    pub fn dim(&self) -> usize {
        self.xbar.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn xbar(&self) -> &Point {
        &self.xbar
    }

    /// The translated directions `x_i - xbar`, one per point.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| {
                p.coords
                    .iter()
                    .zip(&self.xbar.coords)
                    .map(|(x, c)| x - c)
                    .collect()
            })
            .collect()
    }

    /// The sub-set with the given point indices and the same anchor.
    pub fn subset(&self, idx: &[usize]) -> Result<FinitePointSet, PolarLabError> {
        if idx.is_empty() {
            return Err(PolarLabError::InvalidInput("empty subset".into()));
        }
        FinitePointSet::new(
            idx.iter().map(|&i| self.points[i].clone()).collect(),
            self.xbar.clone(),
        )
    }
}

/// The reverse polar `{ alpha : rows . alpha >= 1 }` of a point set.
#[derive(Clone, Debug)]
pub struct PolarPolyhedron {
    pub rows: Vec<Vec<f64>>,
}

impl PolarPolyhedron {
    pub fn contains(&self, alpha: &[f64]) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().zip(alpha).map(|(a, b)| a * b).sum::<f64>() >= 1.0 - ROW_TOL)
    }
}

pub fn reverse_polar(ps: &FinitePointSet) -> PolarPolyhedron {
    PolarPolyhedron { rows: ps.rows() }
}

/// Is the reverse polar empty?  Computed twice: directly (feasibility of
/// the row system) and by testing `xbar` against the hull of the points
/// (the polar is empty exactly when `xbar` lies in the closed hull).  The
/// two runs must agree.
pub fn polar_empty(ps: &FinitePointSet) -> Result<bool, PolarLabError> {
    let direct = separate_lp(ps)?;
    let in_hull = xbar_in_hull(ps)?;
    match (direct.is_none(), in_hull) {
        (true, true) => Ok(true),
        (false, false) => Ok(false),
        (empty, hull) => Err(PolarLabError::Numerical(format!(
            "emptiness cross-check disagrees: separation {}, hull membership {}",
            if empty { "failed" } else { "succeeded" },
            hull
        ))),
    }
}

/// A point of the reverse polar (a margin-one separating direction), or
/// `None` if the polar is empty.
pub fn separate(ps: &FinitePointSet) -> Result<Option<Vec<f64>>, PolarLabError> {
    separate_lp(ps)
}

fn separate_lp(ps: &FinitePointSet) -> Result<Option<Vec<f64>>, PolarLabError> {
    let n = ps.dim();
    let mut lp = LinearProgram::new(vec![0.0; n]);
    for row in ps.rows() {
        lp.add_constraint(row, Sense::Ge, 1.0);
    }
    match lp.solve()? {
        LpSolution::Optimal { x, .. } => {
            let polar = reverse_polar(ps);
            if !polar.contains(&x) {
                return Err(PolarLabError::Numerical(
                    "separating direction fails row check".into(),
                ));
            }
            Ok(Some(x))
        }
        LpSolution::Infeasible => Ok(None),
        LpSolution::Unbounded => unreachable!("feasibility LP has zero objective"),
    }
}

fn xbar_in_hull(ps: &FinitePointSet) -> Result<bool, PolarLabError> {
    let rows = ps.rows();
    let n = ps.dim();
    let m = rows.len();
    // lambda >= 0, sum lambda = 1, sum lambda * (x_i - xbar) = 0.
    let mut lp = LinearProgram::new(vec![0.0; m]);
    for j in 0..m {
        lp.set_bounds(j, 0.0, f64::INFINITY);
    }
    lp.add_constraint(vec![1.0; m], Sense::Eq, 1.0);
    for d in 0..n {
        lp.add_constraint(rows.iter().map(|r| r[d]).collect(), Sense::Eq, 0.0);
    }
    match lp.solve()? {
        LpSolution::Optimal { .. } => Ok(true),
        LpSolution::Infeasible => Ok(false),
        LpSolution::Unbounded => unreachable!("feasibility LP has zero objective"),
    }
}

/// Smallest `mu >= 0` with `xbar + mu*(x - xbar)` in the hull of the
/// points, or `None` if the ray misses the hull entirely.
pub fn min_scale_in_hull(ps: &FinitePointSet, x: &Point) -> Result<Option<f64>, PolarLabError> {
    if x.dim() != ps.dim() {
        return Err(PolarLabError::InvalidInput(
            "query dimension mismatch".into(),
        ));
    }
    let dir: Vec<f64> = x
        .coords
        .iter()
        .zip(&ps.xbar.coords)
        .map(|(a, b)| a - b)
        .collect();
    if dir.iter().map(|d| d * d).sum::<f64>().sqrt() <= 1e-12 {
        return Err(PolarLabError::InvalidInput(
            "query point coincides with xbar".into(),
        ));
    }
    let rows = ps.rows();
    let m = rows.len();
    let n = ps.dim();
    // Variables: mu, lambda_1..lambda_m.  Minimize mu subject to
    // mu*dir = sum lambda_i (x_i - xbar), sum lambda = 1, lambda >= 0.
    let mut obj = vec![0.0; m + 1];
    obj[0] = 1.0;
    let mut lp = LinearProgram::new(obj);
    lp.set_bounds(0, 0.0, f64::INFINITY);
    for j in 0..m {
        lp.set_bounds(j + 1, 0.0, f64::INFINITY);
    }
    let mut ones = vec![0.0; m + 1];
    ones[1..].fill(1.0);
    lp.add_constraint(ones, Sense::Eq, 1.0);
    for d in 0..n {
        let mut row = vec![0.0; m + 1];
        row[0] = dir[d];
        for j in 0..m {
            row[j + 1] = -rows[j][d];
        }
        lp.add_constraint(row, Sense::Eq, 0.0);
    }
    match lp.solve()? {
        LpSolution::Optimal { x, .. } => Ok(Some(x[0])),
        LpSolution::Infeasible => Ok(None),
        LpSolution::Unbounded => Err(PolarLabError::Numerical(
            "min-scale LP reported unbounded".into(),
        )),
    }
}

/// Indices of the points with no other point of the set strictly between
/// them and `xbar` on the connecting segment (collinearity tolerance
/// `1e-9` relative to the segment length).
pub fn radial_visible_subset(ps: &FinitePointSet) -> Vec<usize> {
    let rows = ps.rows();
    let norms: Vec<f64> = rows
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let mut kept = Vec::new();
    'outer: for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i == j {
                continue;
            }
            // Does x_j = xbar + t*(x_i - xbar) for some t in (0, 1)?
            let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            let t = dot / (norms[i] * norms[i]);
            if t <= 0.0 || t >= 1.0 - 1e-12 {
                continue;
            }
            let off: f64 = rows[j]
                .iter()
                .zip(&rows[i])
                .map(|(vj, vi)| vj - t * vi)
                .map(|d| d * d)
                .sum::<f64>()
                .sqrt();
            if off <= 1e-9 * norms[i].max(1.0) {
                continue 'outer; // blocked by x_j
            }
        }
        kept.push(i);
    }
    kept
}

/// Indices of the points visible from `xbar` with respect to the convex
/// hull of the set: the segment from `xbar` first meets the hull at the
/// point itself (`min_scale_in_hull >= 1 - 1e-8`).  Requires `xbar`
/// outside the hull.
pub fn hull_visible_subset(ps: &FinitePointSet) -> Result<Vec<usize>, PolarLabError> {
    if polar_empty(ps)? {
        return Err(PolarLabError::InvalidInput(
            "xbar lies in the hull; hull visibility is not defined".into(),
        ));
    }
    let mut kept = Vec::new();
    for (i, p) in ps.points.iter().enumerate() {
        let mu = min_scale_in_hull(ps, p)?.ok_or_else(|| {
            PolarLabError::Numerical("ray through a hull point misses the hull".into())
        })?;
        if mu >= 1.0 - 1e-8 {
            kept.push(i);
        }
    }
    Ok(kept)
}

/// Indices of the points that are vertices of the hull (not expressible as
/// convex combinations of the other points).
pub fn hull_vertices(ps: &FinitePointSet) -> Result<Vec<usize>, PolarLabError> {
    let rows = ps.rows();
    let n = ps.dim();
    let m = rows.len();
    let mut kept = Vec::new();
    for i in 0..m {
        if m == 1 {
            kept.push(i);
            continue;
        }
        let others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        let mut lp = LinearProgram::new(vec![0.0; others.len()]);
        for j in 0..others.len() {
            lp.set_bounds(j, 0.0, f64::INFINITY);
        }
        lp.add_constraint(vec![1.0; others.len()], Sense::Eq, 1.0);
        for d in 0..n {
            lp.add_constraint(
                others.iter().map(|&j| rows[j][d]).collect(),
                Sense::Eq,
                rows[i][d],
            );
        }
        match lp.solve()? {
            LpSolution::Optimal { .. } => {}
            LpSolution::Infeasible => kept.push(i),
            LpSolution::Unbounded => {
                return Err(PolarLabError::Numerical(
                    "vertex feasibility LP reported unbounded".into(),
                ))
            }
        }
    }
    Ok(kept)
}

/// Is every inequality of `a`'s reverse polar implied by `b`'s polar?
/// (Equivalently: `a`'s polar contains `b`'s.)
fn rows_implied(a: &FinitePointSet, b: &FinitePointSet) -> Result<bool, PolarLabError> {
    let b_rows = b.rows();
    for row in a.rows() {
        let mut lp = LinearProgram::new(row.clone());
        for br in &b_rows {
            lp.add_constraint(br.clone(), Sense::Ge, 1.0);
        }
        match lp.solve()? {
            LpSolution::Optimal { objective, .. } => {
                if objective < 1.0 - ROW_TOL {
                    return Ok(false);
                }
            }
            // Empty polar: everything is vacuously implied.
            LpSolution::Infeasible => return Ok(true),
            LpSolution::Unbounded => return Ok(false),
        }
    }
    Ok(true)
}

/// Do the two point sets generate the same reverse polar?  Both sets must
/// share the anchor.
pub fn generator_equal(a: &FinitePointSet, b: &FinitePointSet) -> Result<bool, PolarLabError> {
    if a.dim() != b.dim() || dist(&a.xbar.coords, &b.xbar.coords) > 1e-12 {
        return Err(PolarLabError::InvalidInput(
            "generator comparison needs a shared anchor".into(),
        ));
    }
    let ea = polar_empty(a)?;
    let eb = polar_empty(b)?;
    match (ea, eb) {
        (true, true) => Ok(true),
        (true, false) | (false, true) => Ok(false),
        (false, false) => Ok(rows_implied(a, b)? && rows_implied(b, a)?),
    }
}

/// The set enlarged by the points `xbar + t*(x_i - xbar)` for every scale
/// `t` in `scales` (all scales must be `>= 1`); duplicates within `1e-9`
/// are dropped.  Scaling away from the anchor never changes the polar,
/// which is what the shadow check exploits.
pub fn shadow_sample(ps: &FinitePointSet, scales: &[f64]) -> Result<FinitePointSet, PolarLabError> {
    if scales.iter().any(|&t| t < 1.0) {
        return Err(PolarLabError::InvalidInput(
            "shadow scales must be >= 1".into(),
        ));
    }
    let mut points = ps.points.clone();
    for &t in scales {
        for row in ps.rows() {
            let cand: Vec<f64> = ps
                .xbar
                .coords
                .iter()
                .zip(&row)
                .map(|(c, v)| c + t * v)
                .collect();
            if points.iter().all(|p| dist(&p.coords, &cand) > 1e-9) {
                points.push(Point::new(cand));
            }
        }
    }
    FinitePointSet::new(points, ps.xbar.clone())
}

/// Which structural fact to exercise on a point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabCheck {
    /// The radially visible subset generates the same polar.
    Visible,
    /// Scaling points away from the anchor leaves the polar unchanged.
    Shadow,
    /// The hull-visible subset generates the same polar.
    SmallestInter,
    /// Hull-visible hull vertices generate the same polar.
    SmallestClosed,
}

impl LabCheck {
    pub fn name(&self) -> &'static str {
        match self {
            LabCheck::Visible => "visible",
            LabCheck::Shadow => "shadow",
            LabCheck::SmallestInter => "smallest-inter",
            LabCheck::SmallestClosed => "smallest-closed",
        }
    }
}

/// Outcome of one lab check on one point set.
#[derive(Clone, Debug)]
pub struct LabReport {
    pub check: LabCheck,
    pub pass: bool,
    pub polar_is_empty: bool,
    /// Indices of the generating subset used, when the check builds one.
    pub kept: Option<Vec<usize>>,
    pub note: String,
}

/// Run one structural check.  Checks whose theorem needs `xbar` outside
/// the hull pass vacuously (with a note) when the polar is empty.
pub fn run_check(ps: &FinitePointSet, check: LabCheck) -> Result<LabReport, PolarLabError> {
    let empty = polar_empty(ps)?;
    match check {
        LabCheck::Visible => {
            let kept = radial_visible_subset(ps);
            let sub = ps.subset(&kept)?;
            let pass = generator_equal(ps, &sub)?;
            Ok(LabReport {
                check,
                pass,
                polar_is_empty: empty,
                note: format!("{} of {} points radially visible", kept.len(), ps.len()),
                kept: Some(kept),
            })
        }
        LabCheck::Shadow => {
            let shadow = shadow_sample(ps, &[1.5, 2.0, 3.25])?;
            let pass = generator_equal(ps, &shadow)?;
            Ok(LabReport {
                check,
                pass,
                polar_is_empty: empty,
                note: format!("shadow sample has {} points", shadow.len()),
                kept: None,
            })
        }
        LabCheck::SmallestInter => {
            if empty {
                return Ok(LabReport {
                    check,
                    pass: true,
                    polar_is_empty: true,
                    kept: None,
                    note: "polar empty on both sides; nothing to generate".into(),
                });
            }
            let kept = hull_visible_subset(ps)?;
            let sub = ps.subset(&kept)?;
            let pass = generator_equal(ps, &sub)?;
            Ok(LabReport {
                check,
                pass,
                polar_is_empty: false,
                note: format!("{} of {} points hull-visible", kept.len(), ps.len()),
                kept: Some(kept),
            })
        }
        LabCheck::SmallestClosed => {
            if empty {
                return Ok(LabReport {
                    check,
                    pass: true,
                    polar_is_empty: true,
                    kept: None,
                    note: "polar empty on both sides; nothing to generate".into(),
                });
            }
            let visible = hull_visible_subset(ps)?;
            let vertices = hull_vertices(ps)?;
            let kept: Vec<usize> = visible
                .into_iter()
                .filter(|i| vertices.contains(i))
                .collect();
            if kept.is_empty() {
                return Ok(LabReport {
                    check,
                    pass: false,
                    polar_is_empty: false,
                    kept: Some(kept),
                    note: "no hull-visible vertices found".into(),
                });
            }
            let sub = ps.subset(&kept)?;
            let pass = generator_equal(ps, &sub)?;
            Ok(LabReport {
                check,
                pass,
                polar_is_empty: false,
                note: format!("{} extreme visible points", kept.len()),
                kept: Some(kept),
            })
        }
    }
}

/// Seeded random point set for lab trials: `len` points in dimension
/// `dim`, coordinates in `[-3, 3]`, anchored at a random `xbar` kept at
/// least `1e-3` away from every point.
pub fn random_point_set<R: Rng>(rng: &mut R, dim: usize, len: usize) -> FinitePointSet {
    assert!(dim >= 1 && len >= 1);
    loop {
        let xbar = Point::new((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let mut points: Vec<Point> = Vec::new();
        let mut tries = 0;
        while points.len() < len && tries < 1000 {
            tries += 1;
            let cand: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
            if dist(&cand, &xbar.coords) <= 1e-3 {
                continue;
            }
            if points.iter().all(|p| dist(&p.coords, &cand) > 1e-3) {
                points.push(Point::new(cand));
            }
        }
        if points.len() == len {
            if let Ok(ps) = FinitePointSet::new(points, xbar) {
                return ps;
            }
        }
    }
}
