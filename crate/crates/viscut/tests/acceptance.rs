//! Acceptance suite: one test per shipping criterion, each printing a
//! single `criterion N (...): PASS/FAIL` line with the measured numbers.
//! Every tolerance is pinned here, in code.
//!
//! Criterion 2 is expected to fail and is kept faithful rather than
//! loosened; see the comment on `criterion_2_quad_enclosure` and the
//! "Known limitation" section of the README.

use std::process::Command;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use viscut::certify::{
    gram_system, gram_witness, sos_decompose, verify_certificate, Parity, SosCertificate,
};
use viscut::cuts::{gradient_cut, validate_cut};
use viscut::formats::parse_instance;
use viscut::multipoly::{MultiPoly, Point};
use viscut::polarlab::{polar_empty, random_point_set, run_check, separate, LabCheck};
use viscut::tighten::prune_enclosure;
use viscut::unipoly::UniPoly;
use viscut::visibility::{
    in_relaxation, is_visible, polar_halfspace, region_description, surface_points_along,
    ConvexDomain, ProblemInstance,
};

// ---------------------------------------------------------------------
// Shared plumbing.
// ---------------------------------------------------------------------

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn load_instance(name: &str) -> ProblemInstance {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture readable");
    parse_instance(&text).expect("fixture is a valid instance")
}

/// Prints the per-criterion verdict line, then enforces it.
fn report(number: usize, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} ({name}): {verdict} — {detail}");
    assert!(pass, "criterion {number} ({name}) failed: {detail}");
}

/// Random full-dimensional quadratic instance with the anchor strictly
/// outside the feasible set (g(xbar) = 1/2 by construction).
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

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return d.iter().map(|v| v / norm).collect();
        }
    }
}

// ---------------------------------------------------------------------
// Criterion 1: the worked three-variable cut, through the real binary.
// ---------------------------------------------------------------------

fn run_cut(fixture_name: &str) -> (Vec<f64>, f64) {
    let out = Command::new(env!("CARGO_BIN_EXE_viscut"))
        .args(["cut", "--input", &fixture(fixture_name)])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "cut exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("cut emits JSON");
    let alpha: Vec<f64> = v["cut"]["alpha"]
        .as_array()
        .expect("alpha array")
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    (alpha, v["cut"]["rhs"].as_f64().expect("rhs"))
}

#[test]
fn criterion_1_quad_cuts() {
    let tol = 1e-9;
    let (alpha_b, rhs_b) = run_cut("quad.json");
    let (alpha_r, rhs_r) = run_cut("quad_tightened.json");
    let expect_b = [1.0, 3.0, 11.0 / 10.0];
    let expect_r = [1.0, 2.0, 11.0 / 10.0];
    let err_b = alpha_b
        .iter()
        .zip(&expect_b)
        .map(|(a, e)| (a - e).abs())
        .fold((rhs_b - 1.0).abs(), f64::max);
    let err_r = alpha_r
        .iter()
        .zip(&expect_r)
        .map(|(a, e)| (a - e).abs())
        .fold((rhs_r - 1.0).abs(), f64::max);
    report(
        1,
        "worked quadratic cuts via `viscut cut`",
        err_b <= tol && err_r <= tol,
        &format!(
            "base box gave {alpha_b:?} (err {err_b:.2e}), tightened box gave {alpha_r:?} (err {err_r:.2e}), tol {tol:.0e}"
        ),
    );
}

// ---------------------------------------------------------------------
// Criterion 2: depth-20 enclosure against the closed-form tightest box.
//
// This criterion is expected to FAIL, and is intentionally left failing:
// the enclosure is the hull of undiscarded leaves, and a depth-20
// bisection grid on the base box has no leaf face at x1 = 1 (leaf width
// 2.1/128 there), so the hull must snap outward to the next grid line,
// at least 1.5e-2 past the true face — already above the 1e-2 tolerance
// before any interval slack.  Measured error is ~4.8e-2.  See README,
// "Known limitation".
// ---------------------------------------------------------------------

#[test]
fn criterion_2_quad_enclosure() {
    let tol = 1e-2;
    let inst = load_instance("quad.json");
    let region = region_description(&inst);
    let enc = prune_enclosure(&region, 20, 1e-9);
    let bounds = enc.bounds.expect("visible region is nonempty");
    let s5 = 5.0_f64.sqrt();
    let r_lo = [-0.1, 0.0, 0.0];
    let r_hi = [1.0, (23.0 + 3.0 * s5) / 20.0, (19.0 + 3.0 * s5) / 20.0];
    let mut worst = 0.0_f64;
    for i in 0..3 {
        worst = worst
            .max((bounds.comps()[i].lo - r_lo[i]).abs())
            .max((bounds.comps()[i].hi - r_hi[i]).abs());
    }
    report(
        2,
        "depth-20 enclosure vs tightest box",
        worst <= tol,
        &format!(
            "bounds {:?} x {:?}, worst per-bound error {worst:.4e}, tol {tol:.0e} (known red: leaf-grid quantization floor ≈ 1.6e-2 at this depth)",
            bounds.lo(),
            bounds.hi()
        ),
    );
}

// ---------------------------------------------------------------------
// Criterion 3: the grazing-contact cubic — blocked but still relaxed.
// ---------------------------------------------------------------------

#[test]
fn criterion_3_closure_membership() {
    let inst = load_instance("closure.json");
    let z = Point::new(vec![-1.0, 0.0]);
    let vis = is_visible(&inst, &z).expect("z is a valid query point");
    let rel = in_relaxation(&inst, &z).expect("z is a valid query point");
    report(
        3,
        "grazing cubic membership",
        !vis && rel,
        &format!("is_visible(-1,0) = {vis} (want false), in_relaxation(-1,0) = {rel} (want true)"),
    );
}

// ---------------------------------------------------------------------
// Criterion 4: the two-variable cubic — sampled visible points stay in
// the published box, and so does the depth-18 enclosure (padded 0.05).
// ---------------------------------------------------------------------

#[test]
fn criterion_4_cubic_visible_box() {
    let inst = load_instance("example1.json");
    let v_lo = [-0.5, -6.0 / 25.0];
    let v_hi = [1.7, 1.5];
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut kept = 0usize;
    let mut escapes = 0usize;
    let mut rays = 0usize;
    // Independent oracle: a point on the surface is accepted as visible
    // only if the segment polynomial is positive with clear margin on a
    // dense grid over (0,1); ambiguous points are skipped, not counted.
    while kept < 10_000 && rays < 400_000 {
        rays += 1;
        let dir = random_direction(&mut rng, 2);
        for x in surface_points_along(&inst, &dir) {
            let p = inst.segment_poly(&x);
            let margin = 1e-7 * (1.0 + p.max_abs_coeff());
            let min = (1..=2000)
                .map(|k| p.eval(k as f64 / 2001.0))
                .fold(f64::INFINITY, f64::min);
            if min <= margin {
                continue;
            }
            kept += 1;
            let inside =
                (0..2).all(|i| x.coords[i] >= v_lo[i] - 1e-9 && x.coords[i] <= v_hi[i] + 1e-9);
            if !inside {
                escapes += 1;
            }
            if kept == 10_000 {
                break;
            }
        }
    }
    let region = region_description(&inst);
    let enc = prune_enclosure(&region, 18, 1e-4);
    let bounds = enc.bounds.expect("visible region is nonempty");
    let pad = 0.05;
    let enclosed = (0..2).all(|i| {
        bounds.comps()[i].lo >= v_lo[i] - pad - 1e-12
            && bounds.comps()[i].hi <= v_hi[i] + pad + 1e-12
    });
    report(
        4,
        "cubic visible box",
        kept == 10_000 && escapes == 0 && enclosed,
        &format!(
            "{kept}/10000 oracle-visible points sampled, {escapes} escaped the box; depth-18 enclosure {:?} x {:?} inside padded box: {enclosed}",
            bounds.lo(),
            bounds.hi()
        ),
    );
}

// ---------------------------------------------------------------------
// Criterion 5: half-space test vs Sturm visibility on 1000 random
// quadratics — zero disagreements outside a 1e-8 dead band.
// ---------------------------------------------------------------------

#[test]
fn criterion_5_halfspace_sturm_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut compared = 0usize;
    let mut disagreements = 0usize;
    for _ in 0..1000 {
        let inst = random_quadratic(&mut rng);
        let (alpha, beta) = polar_halfspace(inst.g(), inst.xbar()).expect("quadratic instance");
        for _ in 0..8 {
            let dir = random_direction(&mut rng, inst.domain().dim());
            for x in surface_points_along(&inst, &dir) {
                let side = alpha.iter().zip(&x.coords).map(|(a, v)| a * v).sum::<f64>() + beta;
                if side.abs() <= 1e-8 {
                    continue;
                }
                let Ok(vis) = is_visible(&inst, &x) else {
                    continue;
                };
                compared += 1;
                if vis != (side > 0.0) {
                    disagreements += 1;
                }
            }
        }
    }
    report(
        5,
        "half-space vs Sturm on quadratics",
        compared > 2000 && disagreements == 0,
        &format!("{compared} surface points compared across 1000 instances, {disagreements} disagreements (band 1e-8)"),
    );
}

// ---------------------------------------------------------------------
// Criterion 6: the finite-point-set laboratory, all LP-checked.
// ---------------------------------------------------------------------

#[test]
fn criterion_6_polar_lab_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut passes = [0usize; 4];
    let plan = [
        (LabCheck::Visible, 200usize),
        (LabCheck::Shadow, 200),
        (LabCheck::SmallestInter, 100),
        (LabCheck::SmallestClosed, 100),
    ];
    let mut duality_ok = true;
    let mut sets = 0usize;
    for (slot, (check, trials)) in plan.iter().enumerate() {
        for _ in 0..*trials {
            let dim = rng.gen_range(2..=4);
            let len = rng.gen_range(3..=8);
            let ps = random_point_set(&mut rng, dim, len);
            sets += 1;
            let rep = run_check(&ps, *check).expect("lab check runs");
            if rep.pass {
                passes[slot] += 1;
            }
            // Emptiness duality: the polar is empty exactly when no
            // separating functional exists.
            let empty = polar_empty(&ps).expect("emptiness LP solves");
            let sep = separate(&ps).expect("separation LP solves");
            if empty != sep.is_none() {
                duality_ok = false;
            }
        }
    }
    let all = passes[0] == 200 && passes[1] == 200 && passes[2] == 100 && passes[3] == 100;
    report(
        6,
        "polar laboratory suites",
        all && duality_ok,
        &format!(
            "visible {}/200, shadow {}/200, smallest-inter {}/100, smallest-closed {}/100, emptiness duality held on all {sets} sets",
            passes[0], passes[1], passes[2], passes[3]
        ),
    );
}

// ---------------------------------------------------------------------
// Criterion 7: certificate round-trips and Gram witnesses.
// ---------------------------------------------------------------------

fn random_unipoly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    UniPoly::new((0..=deg).map(|_| rng.gen_range(-3.0..3.0)).collect())
}

/// Random bivariate instance of the requested total degree, anchored
/// strictly outside the feasible set.
fn random_instance_of_degree(rng: &mut ChaCha8Rng, deg: u32) -> ProblemInstance {
    loop {
        let lo = vec![-2.5, -2.5];
        let hi = vec![2.5, 2.5];
        let xbar = vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let mut terms: Vec<(f64, Vec<u32>)> = Vec::new();
        for i in 0..=deg {
            for j in 0..=(deg - i) {
                terms.push((rng.gen_range(-2.0..2.0), vec![i, j]));
            }
        }
        let raw: Vec<(f64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        let mut g = MultiPoly::from_terms(2, &raw);
        if g.degree() != deg as i32 as u32 {
            continue;
        }
        let shift = 0.5 - g.eval(&xbar);
        g = g.add(&MultiPoly::constant(2, shift));
        if let Ok(inst) =
            ProblemInstance::new(g, ConvexDomain::from_bounds(&lo, &hi), Point::new(xbar))
        {
            return inst;
        }
    }
}

#[test]
fn criterion_7_certificates_and_witnesses() {
    // Round-trips: 500 polynomials constructed as certificates.
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut done = 0usize;
    let mut worst_residual = 0.0_f64;
    while done < 500 {
        let parity = if rng.gen_bool(0.5) {
            Parity::Even
        } else {
            Parity::Odd
        };
        let (d, s1, s2) = match parity {
            Parity::Even => {
                let d = rng.gen_range(1..=4usize);
                (
                    d,
                    random_unipoly(&mut rng, d),
                    random_unipoly(&mut rng, d - 1),
                )
            }
            Parity::Odd => {
                let d = rng.gen_range(0..=3usize);
                (d, random_unipoly(&mut rng, d), random_unipoly(&mut rng, d))
            }
        };
        let built = SosCertificate { parity, d, s1, s2 };
        let p = built.expand();
        if p.is_zero() || p.degree() > 8 {
            continue;
        }
        done += 1;
        let cert = sos_decompose(&p).expect("expansion is certifiably nonnegative");
        worst_residual = worst_residual.max(verify_certificate(&p, &cert));
    }

    // Witnesses: every witness produced must satisfy its linear system
    // and be numerically PSD.
    let mut rng = ChaCha8Rng::seed_from_u64(117);
    let mut witnesses = 0usize;
    let mut worst_eq = 0.0_f64;
    let mut worst_eig = 0.0_f64;
    let mut attempts = 0usize;
    while witnesses < 150 && attempts < 20_000 {
        attempts += 1;
        let deg = rng.gen_range(2..=4);
        let inst = random_instance_of_degree(&mut rng, deg);
        let dir = random_direction(&mut rng, 2);
        let hits = surface_points_along(&inst, &dir);
        let Some(x) = hits.first() else { continue };
        match gram_witness(inst.g(), inst.xbar(), x) {
            Ok(Some(w)) => {
                let (system, taylor) = gram_system(inst.g(), inst.xbar(), x);
                worst_eq = worst_eq.max(system.max_residual(&w.a, &w.b, &taylor));
                worst_eig = worst_eig.min(w.min_eigenvalue());
                witnesses += 1;
            }
            Ok(None) => continue,
            Err(_) => continue,
        }
    }
    let pass = done == 500
        && worst_residual <= 1e-8
        && witnesses == 150
        && worst_eq <= 1e-8
        && worst_eig >= -1e-9;
    report(
        7,
        "certificate round-trips and Gram witnesses",
        pass,
        &format!(
            "500 round-trips, worst residual {worst_residual:.2e} (tol 1e-8); {witnesses} witnesses, worst equation residual {worst_eq:.2e} (tol 1e-8), min eigenvalue {worst_eig:.2e} (floor -1e-9)"
        ),
    );
}

// ---------------------------------------------------------------------
// Criterion 8: cuts built over the tightened enclosure stay valid for
// the full feasible set.
// ---------------------------------------------------------------------

#[test]
fn criterion_8_pipeline_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut accepted = 0usize;
    let mut worst = f64::NEG_INFINITY;
    while accepted < 100 {
        let inst = random_quadratic(&mut rng);
        let region = region_description(&inst);
        let enc = prune_enclosure(&region, 18, 1e-4);
        let Some(bounds) = enc.bounds else { continue };
        let Ok(Some(cut)) = gradient_cut(inst.g(), &bounds, inst.xbar()) else {
            continue;
        };
        let rep = validate_cut(&cut, &inst, 10_000, 9_000 + accepted as u64);
        if !rep.conclusive {
            continue;
        }
        accepted += 1;
        worst = worst.max(rep.max_violation);
    }
    report(
        8,
        "tightened cuts valid for the full set",
        worst <= 1e-7,
        &format!(
            "100 instances, 10^4 validation samples each, worst violation {worst:.2e} (tol 1e-7)"
        ),
    );
}

// ---------------------------------------------------------------------
// Criterion 9: Sturm counts vs a dense grid oracle.
// ---------------------------------------------------------------------

#[test]
fn criterion_9_sturm_grid_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut tested = 0usize;
    let mut mismatches = 0usize;
    while tested < 1000 {
        let deg = rng.gen_range(1..=8);
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let poly = UniPoly::new(coeffs);
        if poly.is_zero() || poly.degree() == 0 {
            continue;
        }
        tested += 1;
        let mut agree = false;
        // A root grazing a scan node can shift the sign-change count by
        // one; on mismatch, retry once on a perturbed interval with a
        // denser grid.
        for attempt in 0..2 {
            let (a, b) = if attempt == 0 {
                (0.0, 1.0)
            } else {
                (
                    -1e-7 * rng.gen_range(1.0..2.0),
                    1.0 + 1e-7 * rng.gen_range(1.0..2.0),
                )
            };
            let grid = 100_000 * (1 + 9 * attempt);
            let sturm = poly.sturm_count(a, b);
            let mut changes = 0usize;
            let mut last = 0i8;
            for i in 0..=grid {
                let x = a + (b - a) * i as f64 / grid as f64;
                let v = poly.eval(x);
                if v == 0.0 {
                    continue;
                }
                let s: i8 = if v > 0.0 { 1 } else { -1 };
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
            if sturm == changes {
                agree = true;
                break;
            }
        }
        if !agree {
            mismatches += 1;
        }
    }
    report(
        9,
        "Sturm vs grid oracle",
        mismatches == 0,
        &format!("1000 polynomials (deg <= 8, coeffs in [-5,5]), 10^5-point scans, {mismatches} mismatches"),
    );
}
