//! A small dense two-phase simplex solver.
//!
//! This is deliberately a desk-scale solver: the polar laboratory and the
//! cut machinery pose linear programs with at most a few dozen variables
//! and constraints, posed repeatedly, where what matters is deterministic
//! behaviour and trustworthy status reporting rather than speed.  Design
//! choices in that spirit:
//!
//! * Bland's pivoting rule throughout — slower than steepest descent but
//!   immune to cycling, so termination needs no luck.
//! * Equalities are handled as two opposing inequalities; free variables
//!   are split into positive and negative parts.
//! * Pivot elements must exceed `1e-9`; a phase-1 residual above `1e-7`
//!   reads as infeasible.
//! * Running out of pivots (iteration cap) is reported as
//!   [`LpError::Numerical`], which callers must treat as "no answer",
//!   never as "infeasible".

use std::fmt;

const PIVOT_TOL: f64 = 1e-9;
const PHASE1_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs . x  (sense)  rhs`.
#[derive(Clone, Debug)]
pub struct LinCon {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// `minimize objective . x` subject to constraints and per-variable bounds
/// (`f64::NEG_INFINITY` / `f64::INFINITY` mark absent bounds; variables are
/// free by default).
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub constraints: Vec<LinCon>,
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpSolution {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
    Unbounded,
}

/// Numerical breakdown: the solver could not certify any of the three
/// statuses.  Distinct from [`LpSolution::Infeasible`] by design.
#[derive(Clone, Debug, PartialEq)]
pub enum LpError {
    Numerical(String),
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::Numerical(msg) => write!(f, "simplex numerical breakdown: {msg}"),
        }
    }
}

impl std::error::Error for LpError {}

impl LinearProgram {
    /// New program with the given objective; all variables start free.
    pub fn new(objective: Vec<f64>) -> Self {
        let num_vars = objective.len();
        assert!(num_vars > 0, "LP needs at least one variable");
        LinearProgram {
            num_vars,
            objective,
            constraints: Vec::new(),
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); num_vars],
        }
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint length mismatch");
        self.constraints.push(LinCon { coeffs, sense, rhs });
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) {
        assert!(var < self.num_vars);
        self.bounds[var] = (lo, hi);
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        // Contradictory bounds make the program infeasible outright.
        if self.bounds.iter().any(|&(lo, hi)| lo > hi) {
            return Ok(LpSolution::Infeasible);
        }
        let std = Standardized::build(self);
        match std.solve()? {
            StdOutcome::Optimal(y) => {
                let x = std.recover(&y);
                let objective = self.objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();
                Ok(LpSolution::Optimal { x, objective })
            }
            StdOutcome::Infeasible => Ok(LpSolution::Infeasible),
            StdOutcome::Unbounded => Ok(LpSolution::Unbounded),
        }
    }
}

/// How an original variable maps into the standard-form variables.
#[derive(Clone, Debug)]
enum VarMap {
    /// `x = lo + y[col]`
    Shifted { col: usize, lo: f64 },
    /// `x = hi - y[col]`
    Mirrored { col: usize, hi: f64 },
    /// `x = y[pos] - y[neg]`
    Split { pos: usize, neg: usize },
}

enum StdOutcome {
    Optimal(Vec<f64>),
    Infeasible,
    Unbounded,
}

/// `minimize c . y` s.t. `A y <= b`, `y >= 0`.
struct Standardized {
    ncols: usize,
    cost: Vec<f64>,
    rows: Vec<(Vec<f64>, f64)>,
    maps: Vec<VarMap>,
}

impl Standardized {
    fn build(lp: &LinearProgram) -> Standardized {
        let mut maps = Vec::with_capacity(lp.num_vars);
        let mut ncols = 0;
        for &(lo, hi) in &lp.bounds {
            let map = match (lo.is_finite(), hi.is_finite()) {
                (true, _) => VarMap::Shifted { col: ncols, lo },
                (false, true) => VarMap::Mirrored { col: ncols, hi },
                (false, false) => {
                    let m = VarMap::Split {
                        pos: ncols,
                        neg: ncols + 1,
                    };
                    ncols += 1;
                    m
                }
            };
            ncols += 1;
            maps.push(map);
        }

        // Rewrite a row `coeffs . x <= rhs` over the standard variables.
        let rewrite = |coeffs: &[f64], rhs: f64| -> (Vec<f64>, f64) {
            let mut row = vec![0.0; ncols];
            let mut b = rhs;
            for (k, &c) in coeffs.iter().enumerate() {
                match maps[k] {
                    VarMap::Shifted { col, lo } => {
                        row[col] += c;
                        b -= c * lo;
                    }
                    VarMap::Mirrored { col, hi } => {
                        row[col] -= c;
                        b -= c * hi;
                    }
                    VarMap::Split { pos, neg } => {
                        row[pos] += c;
                        row[neg] -= c;
                    }
                }
            }
            (row, b)
        };

        let mut rows = Vec::new();
        for con in &lp.constraints {
            match con.sense {
                Sense::Le => rows.push(rewrite(&con.coeffs, con.rhs)),
                Sense::Ge => {
                    let neg: Vec<f64> = con.coeffs.iter().map(|c| -c).collect();
                    rows.push(rewrite(&neg, -con.rhs));
                }
                Sense::Eq => {
                    rows.push(rewrite(&con.coeffs, con.rhs));
                    let neg: Vec<f64> = con.coeffs.iter().map(|c| -c).collect();
                    rows.push(rewrite(&neg, -con.rhs));
                }
            }
        }
        // Finite upper bounds of shifted variables become rows.
        for (k, &(lo, hi)) in lp.bounds.iter().enumerate() {
            if lo.is_finite() && hi.is_finite() {
                let mut unit = vec![0.0; lp.num_vars];
                unit[k] = 1.0;
                rows.push(rewrite(&unit, hi));
            }
        }

        let (cost, _) = rewrite(&lp.objective, 0.0);
        Standardized {
            ncols,
            cost,
            rows,
            maps,
        }
    }

    fn recover(&self, y: &[f64]) -> Vec<f64> {
        self.maps
            .iter()
            .map(|m| match *m {
                VarMap::Shifted { col, lo } => lo + y[col],
                VarMap::Mirrored { col, hi } => hi - y[col],
                VarMap::Split { pos, neg } => y[pos] - y[neg],
            })
            .collect()
    }

    fn solve(&self) -> Result<StdOutcome, LpError> {
        let m = self.rows.len();
        let n = self.ncols;
        // Columns: structural | slacks | artificials (negative-rhs rows).
        let n_art = self.rows.iter().filter(|(_, b)| *b < 0.0).count();
        let total = n + m + n_art;
        let mut t: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut art_cols = Vec::new();
        let mut next_art = n + m;
        for (i, (row, b)) in self.rows.iter().enumerate() {
            let mut r = vec![0.0; total + 1];
            let flip = if *b < 0.0 { -1.0 } else { 1.0 };
            for (j, &a) in row.iter().enumerate() {
                r[j] = flip * a;
            }
            r[n + i] = flip; // slack
            r[total] = flip * b;
            if *b < 0.0 {
                r[next_art] = 1.0;
                art_cols.push(next_art);
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(n + i);
            }
            t.push(r);
        }

        let is_art = |j: usize| j >= n + m;

        if !art_cols.is_empty() {
            let mut phase1 = vec![0.0; total + 1];
            for c in &art_cols {
                phase1[*c] = 1.0;
            }
            let value = run_simplex(&mut t, &mut basis, &phase1, total, &|_| false)?;
            match value {
                SimplexEnd::Optimal(z) => {
                    if z > PHASE1_TOL {
                        return Ok(StdOutcome::Infeasible);
                    }
                }
                SimplexEnd::Unbounded => {
                    // Phase 1 is bounded below by zero; this is breakdown.
                    return Err(LpError::Numerical("phase-1 unbounded".into()));
                }
            }
            // Pivot lingering artificials out of the basis where possible.
            for i in 0..m {
                if is_art(basis[i]) {
                    if let Some(j) = (0..n + m).find(|&j| t[i][j].abs() > PIVOT_TOL) {
                        pivot(&mut t, &mut basis, i, j, total);
                    }
                }
            }
        }

        match run_simplex(
            &mut t,
            &mut basis,
            &pad_cost(&self.cost, total),
            total,
            &is_art,
        )? {
            SimplexEnd::Optimal(_) => {
                let mut y = vec![0.0; n];
                for (i, &bj) in basis.iter().enumerate() {
                    if bj < n {
                        y[bj] = t[i][total];
                    }
                }
                Ok(StdOutcome::Optimal(y))
            }
            SimplexEnd::Unbounded => Ok(StdOutcome::Unbounded),
        }
    }
}

fn pad_cost(cost: &[f64], total: usize) -> Vec<f64> {
    let mut c = vec![0.0; total + 1];
    c[..cost.len()].copy_from_slice(cost);
    c
}

enum SimplexEnd {
    Optimal(f64),
    Unbounded,
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize, total: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    for i in 0..t.len() {
        if i != row && t[i][col].abs() > 0.0 {
            let f = t[i][col];
            for j in 0..=total {
                t[i][j] -= f * t[row][j];
            }
            t[i][col] = 0.0;
        }
    }
    basis[row] = col;
}

/// Bland-rule simplex over an already feasible tableau; returns the optimal
/// objective value or unboundedness.  `banned` columns never enter.
fn run_simplex(
    t: &mut [Vec<f64>],
    basis: &mut [usize],
    cost: &[f64],
    total: usize,
    banned: &dyn Fn(usize) -> bool,
) -> Result<SimplexEnd, LpError> {
    let m = t.len();
    // Reduced-cost row: cost with the basic columns eliminated.
    let mut obj = cost.to_vec();
    for i in 0..m {
        let cb = obj[basis[i]];
        if cb != 0.0 {
            for j in 0..=total {
                obj[j] -= cb * t[i][j];
            }
        }
    }
    let max_iter = 200 * (m + total) + 2000;
    for _ in 0..max_iter {
        // Bland: first column with a negative reduced cost.
        let entering = (0..total).find(|&j| !banned(j) && obj[j] < -PIVOT_TOL);
        let Some(col) = entering else {
            return Ok(SimplexEnd::Optimal(-obj[total]));
        };
        // Ratio test; ties broken by smallest basis index (Bland).
        let mut best: Option<(f64, usize, usize)> = None; // (ratio, basis var, row)
        for i in 0..m {
            if t[i][col] > PIVOT_TOL {
                let ratio = t[i][total] / t[i][col];
                let candidate = (ratio, basis[i], i);
                best = match best {
                    None => Some(candidate),
                    Some(b) => {
                        if ratio < b.0 - 1e-12 || (ratio < b.0 + 1e-12 && basis[i] < b.1) {
                            Some(candidate)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
        }
        let Some((_, _, row)) = best else {
            return Ok(SimplexEnd::Unbounded);
        };
        let p = t[row][col];
        for v in t[row].iter_mut() {
            *v /= p;
        }
        let f = obj[col];
        if f != 0.0 {
            for j in 0..=total {
                obj[j] -= f * t[row][j];
            }
            obj[col] = 0.0;
        }
        for i in 0..m {
            if i != row {
                let f = t[i][col];
                if f != 0.0 {
                    for j in 0..=total {
                        t[i][j] -= f * t[row][j];
                    }
                    t[i][col] = 0.0;
                }
            }
        }
        basis[row] = col;
    }
    Err(LpError::Numerical("pivot iteration limit reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn optimal(lp: &LinearProgram) -> (Vec<f64>, f64) {
        match lp.solve().expect("solver should not break down") {
            LpSolution::Optimal { x, objective } => (x, objective),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn simple_bounded_lp() {
        // min -x - 2y s.t. x + y <= 4, x <= 3, y <= 2, x,y >= 0.
        let mut lp = LinearProgram::new(vec![-1.0, -2.0]);
        lp.set_bounds(0, 0.0, 3.0);
        lp.set_bounds(1, 0.0, 2.0);
        lp.add_constraint(vec![1.0, 1.0], Sense::Le, 4.0);
        let (x, obj) = optimal(&lp);
        assert!((obj + 6.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_free_variable() {
        // min x s.t. x + y = 1, y <= 5, x free, y free.
        let mut lp = LinearProgram::new(vec![1.0, 0.0]);
        lp.add_constraint(vec![1.0, 1.0], Sense::Eq, 1.0);
        lp.add_constraint(vec![0.0, 1.0], Sense::Le, 5.0);
        let (x, obj) = optimal(&lp);
        assert!((obj + 4.0).abs() < 1e-9, "obj {obj}");
        assert!((x[0] + 4.0).abs() < 1e-9 && (x[1] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible() {
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.add_constraint(vec![1.0], Sense::Ge, 1.0);
        lp.add_constraint(vec![1.0], Sense::Le, 0.0);
        assert_eq!(lp.solve().unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::new(vec![-1.0]);
        lp.set_bounds(0, 0.0, f64::INFINITY);
        lp.add_constraint(vec![-1.0], Sense::Le, 0.0);
        assert_eq!(lp.solve().unwrap(), LpSolution::Unbounded);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // min x + y s.t. x + y >= 2, x - y >= -1, x,y >= 0.
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.set_bounds(0, 0.0, f64::INFINITY);
        lp.set_bounds(1, 0.0, f64::INFINITY);
        lp.add_constraint(vec![1.0, 1.0], Sense::Ge, 2.0);
        lp.add_constraint(vec![1.0, -1.0], Sense::Ge, -1.0);
        let (_, obj) = optimal(&lp);
        assert!((obj - 2.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Several constraints through one vertex; Bland must not cycle.
        let mut lp = LinearProgram::new(vec![-1.0, -1.0]);
        lp.set_bounds(0, 0.0, f64::INFINITY);
        lp.set_bounds(1, 0.0, f64::INFINITY);
        lp.add_constraint(vec![1.0, 0.0], Sense::Le, 1.0);
        lp.add_constraint(vec![1.0, 1.0], Sense::Le, 2.0);
        lp.add_constraint(vec![0.0, 1.0], Sense::Le, 1.0);
        lp.add_constraint(vec![2.0, 1.0], Sense::Le, 3.0);
        lp.add_constraint(vec![1.0, 2.0], Sense::Le, 3.0);
        let (x, obj) = optimal(&lp);
        assert!((obj + 2.0).abs() < 1e-9);
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn strong_duality_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _case in 0..200 {
            let n = rng.gen_range(2..=5);
            let m = rng.gen_range(2..=6);
            let a: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..2.0)).collect())
                .collect();
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
            let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0)).collect();
            // b = A x0 - slack keeps x0 primal feasible; c > 0 keeps the
            // primal bounded below on the nonnegative orthant.
            let b: Vec<f64> = a
                .iter()
                .map(|row| {
                    row.iter().zip(&x0).map(|(aij, xj)| aij * xj).sum::<f64>()
                        - rng.gen_range(0.0..1.0)
                })
                .collect();

            // Primal: min c.x s.t. A x >= b, x >= 0.
            let mut primal = LinearProgram::new(c.clone());
            for i in 0..n {
                primal.set_bounds(i, 0.0, f64::INFINITY);
            }
            for (row, bi) in a.iter().zip(&b) {
                primal.add_constraint(row.clone(), Sense::Ge, *bi);
            }
            let (_, p_obj) = optimal(&primal);

            // Dual: max b.y s.t. A^T y <= c, y >= 0.
            let mut dual = LinearProgram::new(b.iter().map(|v| -v).collect());
            for j in 0..m {
                dual.set_bounds(j, 0.0, f64::INFINITY);
            }
            for j in 0..n {
                let col: Vec<f64> = a.iter().map(|row| row[j]).collect();
                dual.add_constraint(col, Sense::Le, c[j]);
            }
            let (_, d_neg) = optimal(&dual);
            let d_obj = -d_neg;
            assert!(
                (p_obj - d_obj).abs() <= 1e-6 * (1.0 + p_obj.abs()),
                "duality gap: {p_obj} vs {d_obj}"
            );
        }
    }
}
