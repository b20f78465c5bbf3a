//! Tightened cutting planes for nonlinear separation problems.
//!
//! Given a basic region `S = {x in C : g(x) <= 0}` inside a convex domain `C`
//! and a point `xbar` with `g(xbar) > 0` that we want to separate from `S`,
//! the classical move is to build a convex underestimator of `g` over a box
//! and take a gradient cut.  This crate tightens that move: only the part of
//! the constraint surface `g = 0` that is *visible* from `xbar` (reachable by
//! a segment that stays outside `S`) can support a cut, so the underestimator
//! only needs to be valid over a box around the visible points — usually a
//! much smaller box, hence a deeper cut.
//!
//! The pieces, bottom up:
//!
//! * [`interval`]  — closed-interval arithmetic used by the pruning steps.
//! * [`multipoly`] — sparse multivariate polynomials: evaluation, gradients,
//!   exact restriction to a segment, interval range bounds.
//! * [`unipoly`]   — dense univariate polynomials: Sturm chains, root
//!   counting and isolation, positivity on `(0,1]` and `[0,1]`.
//! * [`linprog`]   — a small dense two-phase simplex solver.
//! * [`visibility`] — problem instances, visibility and relaxation tests,
//!   the exact half-space description for quadratic `g`.
//! * [`certify`]   — weighted sum-of-squares certificates for `p >= 0` on
//!   `[0,1]` and the Gram-matrix witness form of the visibility system.
//! * [`polarlab`]  — a laboratory for finite point sets: reverse polars,
//!   separation, visible subsets, generator equivalence, all checked by
//!   linear programming.
//! * [`tighten`]   — branch-and-prune interval enclosures of the visible
//!   region, plus feasibility-based bound tightening.
//! * [`cuts`]      — McCormick underestimators, gradient cuts, cut
//!   validation and dominance comparison.
//! * [`formats`]   — JSON instance/point-set files and report emission.
//!
//! Start with the runnable examples (`cargo run --example <name>`):
//!
//! * `segment_visibility` — what "visible from `xbar`" means, decided
//!   exactly with Sturm sequences on the segment restriction of `g`.
//! * `quadratic_halfspace` — for quadratic `g` the visible points are cut
//!   out by a single half-space; derives it for a circle and a 3-d surface.
//! * `sos_certificates` — nonnegativity certificates on `[0,1]` built from
//!   root factorizations, no semidefinite solver involved.
//! * `gram_witness` — the same certificates packaged as positive
//!   semidefinite Gram matrices satisfying the visibility constraint system.
//! * `polar_lab` — the reverse-polar generator theorems exercised on finite
//!   point sets with an LP oracle.
//! * `enclosure` — interval branch-and-prune boxes around visible regions.
//! * `tightened_cut` — the full pipeline: enclosure, McCormick cut over the
//!   original box vs. the tightened box, dominance report.
//!
//! The `viscut` binary exposes the same pipeline as subcommands (`check`,
//! `region`, `tighten`, `cut`, `certify`, `lab`) over JSON files; see the
//! crate README.

pub mod certify;
pub mod cuts;
pub mod formats;
pub mod interval;
pub mod linprog;
pub mod multipoly;
pub mod polarlab;
pub mod tighten;
pub mod unipoly;
pub mod visibility;
