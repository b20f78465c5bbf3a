//! Constructive nonnegativity certificates on `[0, 1]` and Gram-matrix
//! witnesses for relaxation membership.
//!
//! A univariate polynomial `p` is nonnegative on `[0, 1]` exactly when it
//! admits a weighted sum-of-squares decomposition
//!
//! ```text
//! deg p = 2d:    p = s1^2 + lambda (1 - lambda) s2^2
//! deg p = 2d+1:  p = lambda s1^2 + (1 - lambda) s2^2
//! ```
//!
//! with degree bounds `deg s1 <= d`, `deg s2 <= d-1` (even case) and
//! `deg s1, s2 <= d` (odd case).  [`sos_decompose`] computes the squares
//! explicitly: the Goursat substitution `x = lambda / (1 - lambda)` maps
//! the problem to nonnegativity on `[0, infinity)`, where the classical
//! two-square splitting `P(x) = f(x)^2 + x g(x)^2` falls out of a complex
//! factorization of `P(t^2)`, and the substitution is then undone.  No
//! numerical SDP solver is involved; root finding plus Sturm-based
//! positivity checks carry the whole argument.
//!
//! The same squares, written as coefficient vectors `c1`, `c2`, yield
//! rank-1 positive semidefinite matrices `A = c1 c1'` and `B = c2 c2'`
//! that satisfy a small linear system tying the entries of `A`, `B` to
//! the Taylor coefficients of the segment polynomial `p_x`.  That system
//! ([`GramSystem`]) is an extended formulation of the relaxation
//! `R_S(xbar)`: a point `x` on the surface belongs to the relaxation
//! exactly when the system admits a PSD solution, and [`gram_witness`]
//! produces one constructively whenever it exists.

use crate::multipoly::{MultiPoly, Point};
use crate::unipoly::UniPoly;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, Debug)]
pub enum CertifyError {
    /// The polynomial takes negative values on `[0, 1]`.
    NotNonnegative,
    /// Decomposition of the zero polynomial was requested.
    ZeroPolynomial,
    /// `gram_witness` was asked about a point with `g(x)` far from zero.
    OffSurface(f64),
    /// Root finding or reassembly lost too much accuracy.
    Numerical(String),
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::NotNonnegative => {
                write!(f, "polynomial is negative somewhere on [0, 1]")
            }
            CertifyError::ZeroPolynomial => {
                write!(f, "cannot decompose the zero polynomial")
            }
            CertifyError::OffSurface(v) => {
                write!(f, "point is off the surface: g(x) = {v}")
            }
            CertifyError::Numerical(m) => write!(f, "certificate construction failed: {m}"),
        }
    }
}

impl std::error::Error for CertifyError {}

/// Degree parity of a certificate or Gram system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Degree `2d`.
    Even,
    /// Degree `2d + 1`.
    Odd,
}

/// A weighted sum-of-squares certificate of nonnegativity on `[0, 1]`.
#[derive(Clone, Debug)]
pub struct SosCertificate {
    pub parity: Parity,
    /// Degree parameter: the certified polynomial has degree `2d` (even)
    /// or `2d + 1` (odd).
    pub d: usize,
    pub s1: UniPoly,
    pub s2: UniPoly,
}

impl SosCertificate {
    /// The polynomial the certificate expands to.
    pub fn expand(&self) -> UniPoly {
        let s1sq = self.s1.mul(&self.s1);
        let s2sq = self.s2.mul(&self.s2);
        match self.parity {
            Parity::Even => {
                // s1^2 + lambda (1 - lambda) s2^2
                let w = UniPoly::new(vec![0.0, 1.0, -1.0]);
                s1sq.add(&w.mul(&s2sq))
            }
            Parity::Odd => {
                // lambda s1^2 + (1 - lambda) s2^2
                let lam = UniPoly::new(vec![0.0, 1.0]);
                let one_minus = UniPoly::new(vec![1.0, -1.0]);
                lam.mul(&s1sq).add(&one_minus.mul(&s2sq))
            }
        }
    }
}

/// Max-norm coefficient difference between `p` and the certificate's
/// expansion.
pub fn verify_certificate(p: &UniPoly, cert: &SosCertificate) -> f64 {
    let diff = p.sub(&cert.expand());
    diff.max_abs_coeff()
}

// ---------------------------------------------------------------------
// Complex polynomial helpers (coefficients ascending, like UniPoly).
// ---------------------------------------------------------------------

fn cpoly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// All complex roots of a real polynomial via companion-matrix
/// eigenvalues, polished by a few Newton steps.
fn complex_roots(p: &UniPoly) -> Result<Vec<Complex64>, CertifyError> {
    let q = p.scaled_to_unit();
    let coeffs = q.coeffs();
    let m = q.degree();
    if m == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[m];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let companion = DMatrix::from_fn(m, m, |r, c| {
        if c == m - 1 {
            -monic[r]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eigen = companion.complex_eigenvalues();
    let deriv: Vec<f64> = (1..=m).map(|k| k as f64 * coeffs[k]).collect();
    let mut roots = Vec::with_capacity(m);
    for z0 in eigen.iter() {
        let mut z = *z0;
        for _ in 0..3 {
            let pv = poly_eval_complex(coeffs, z);
            let dv = poly_eval_complex(&deriv, z);
            if dv.norm() < 1e-14 {
                break;
            }
            let step = pv / dv;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            z -= step;
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(CertifyError::Numerical("root iteration diverged".into()));
        }
        roots.push(z);
    }
    Ok(roots)
}

// ---------------------------------------------------------------------
// Core construction on the half line.
// ---------------------------------------------------------------------

/// Splits `P >= 0` on `[0, infinity)`, `deg P <= 2d`, into
/// `P = f^2 + x g^2` with `deg f <= d`, `deg g <= d - 1`.
///
/// The factorization works through `P(t^2) = |h(t)|^2`: every root `z`
/// of `P` contributes one of the square roots `±sqrt(z)` to `h` —
/// origin roots stay at the origin, complex and negative real roots
/// contribute their upper-half-plane square root, and positive real
/// roots (necessarily of even multiplicity) are split half and half
/// between `+sqrt(z)` and `-sqrt(z)`.  A global phase rotation then
/// makes the even coefficients of `h` real and the odd ones imaginary,
/// and those two halves are `f(t^2)` and `t g(t^2)`.
fn split_halfline(p_half: &UniPoly) -> Result<(UniPoly, UniPoly), CertifyError> {
    if p_half.is_zero() {
        return Ok((UniPoly::zero(), UniPoly::zero()));
    }
    // Exact origin roots come off first: P = x^k * Q with Q(0) != 0.
    let (q, k_origin) = p_half.deflate_at_zero();
    let lead = q.leading();
    if lead <= 0.0 {
        return Err(CertifyError::Numerical(
            "polynomial is negative at infinity".into(),
        ));
    }
    let roots = complex_roots(&q)?;
    let scale = q.max_abs_coeff();
    let im_tol = 1e-7;
    let zero_tol = 1e-9 * (1.0 + scale);

    // Roots of h(t): half of the root multiset of P(t^2).
    let mut h_roots: Vec<Complex64> = Vec::new();
    // Origin roots of P(t^2) have doubled multiplicity; h takes half.
    for _ in 0..k_origin {
        h_roots.push(Complex64::new(0.0, 0.0));
    }
    let mut positive_real: Vec<f64> = Vec::new();
    for z in roots {
        if z.im.abs() <= im_tol * (1.0 + z.norm()) && z.re > zero_tol {
            positive_real.push(z.re);
        } else if z.norm() <= zero_tol {
            h_roots.push(Complex64::new(0.0, 0.0));
        } else {
            // Upper-half-plane square root (negative reals give i*sqrt|z|).
            let w = z.sqrt();
            h_roots.push(if w.im >= 0.0 { w } else { -w });
        }
    }
    // Positive real roots must pair up (even multiplicity); adjacent
    // values after sorting are the numerically split copies.
    positive_real.sort_by(f64::total_cmp);
    let mut i = 0;
    while i + 1 < positive_real.len() {
        let mean = 0.5 * (positive_real[i] + positive_real[i + 1]);
        let r = mean.max(0.0).sqrt();
        h_roots.push(Complex64::new(r, 0.0));
        h_roots.push(Complex64::new(-r, 0.0));
        i += 2;
    }
    if i < positive_real.len() {
        // A lone positive root of a nonnegative polynomial is numerical
        // debris; keep its square root and let the residual check decide.
        h_roots.push(Complex64::new(positive_real[i].sqrt(), 0.0));
    }

    // h(t) = sqrt(lead) * prod (t - w).
    let mut h = vec![Complex64::new(lead.sqrt(), 0.0)];
    for w in &h_roots {
        h = cpoly_mul(&h, &[-w, Complex64::new(1.0, 0.0)]);
    }

    // Rotate so even-index coefficients are real, odd ones imaginary.
    let (k_max, c_max) = h
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("h is nonzero");
    let phase = if k_max % 2 == 0 {
        -c_max.arg()
    } else {
        std::f64::consts::FRAC_PI_2 - c_max.arg()
    };
    let rot = Complex64::from_polar(1.0, phase);
    let h: Vec<Complex64> = h.iter().map(|c| c * rot).collect();

    let f_coeffs: Vec<f64> = h.iter().step_by(2).map(|c| c.re).collect();
    let g_coeffs: Vec<f64> = h.iter().skip(1).step_by(2).map(|c| c.im).collect();
    Ok((UniPoly::new(f_coeffs), UniPoly::new(g_coeffs)))
}

/// `(1 + x)^k` as a UniPoly.
fn one_plus_x_pow(k: usize) -> UniPoly {
    let mut acc = UniPoly::constant(1.0);
    let base = UniPoly::new(vec![1.0, 1.0]);
    for _ in 0..k {
        acc = acc.mul(&base);
    }
    acc
}

/// `(1 - lambda)^k` as a UniPoly.
fn one_minus_pow(k: usize) -> UniPoly {
    let mut acc = UniPoly::constant(1.0);
    let base = UniPoly::new(vec![1.0, -1.0]);
    for _ in 0..k {
        acc = acc.mul(&base);
    }
    acc
}

/// The Goursat transform `P(x) = (1 + x)^(2d) p(x / (1 + x))`, mapping
/// nonnegativity on `[0, 1]` to nonnegativity on `[0, infinity)`.
fn goursat_forward(p: &UniPoly, d: usize) -> UniPoly {
    let coeffs = p.coeffs();
    let mut out = UniPoly::zero();
    for (j, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        // a * x^j * (1 + x)^(2d - j)
        let mut term = one_plus_x_pow(2 * d - j).scale(a);
        let mut shifted = vec![0.0; j];
        shifted.extend_from_slice(term.coeffs());
        term = UniPoly::new(shifted);
        out = out.add(&term);
    }
    out
}

/// `(1 - lambda)^k * f(lambda / (1 - lambda))`: the inverse substitution
/// applied to a polynomial of degree `<= k`.
fn goursat_back(f: &UniPoly, k: usize) -> UniPoly {
    let mut out = UniPoly::zero();
    for (j, &c) in f.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        // c * lambda^j * (1 - lambda)^(k - j)
        let mut term = one_minus_pow(k - j).scale(c);
        let mut shifted = vec![0.0; j];
        shifted.extend_from_slice(term.coeffs());
        term = UniPoly::new(shifted);
        out = out.add(&term);
    }
    out
}

/// Even-parity core: `p >= 0` on `[0, 1]` with `deg p <= 2d` becomes
/// `p = s1^2 + lambda (1 - lambda) s2^2`.
fn even_decompose(p: &UniPoly, d: usize) -> Result<(UniPoly, UniPoly), CertifyError> {
    if p.is_zero() {
        return Ok((UniPoly::zero(), UniPoly::zero()));
    }
    let scale = p.max_abs_coeff();
    let p_unit = p.scale(1.0 / scale);
    let big = goursat_forward(&p_unit, d);
    let (f, g) = split_halfline(&big)?;
    let s1 = goursat_back(&f, d).scale(scale.sqrt());
    let s2 = if g.is_zero() {
        UniPoly::zero()
    } else {
        goursat_back(&g, d - 1).scale(scale.sqrt())
    };
    Ok((s1, s2))
}

/// Decompose `p` as a certificate of the requested parity and degree
/// parameter (`deg p <= 2d` for even, `<= 2d + 1` for odd).  Lower
/// actual degree is fine; the certificate keeps the requested shape.
pub fn sos_decompose_with(
    p: &UniPoly,
    parity: Parity,
    d: usize,
) -> Result<SosCertificate, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if !p.is_nonnegative_on_unit() {
        return Err(CertifyError::NotNonnegative);
    }
    let cap = match parity {
        Parity::Even => 2 * d,
        Parity::Odd => 2 * d + 1,
    };
    if p.degree() > cap {
        return Err(CertifyError::Numerical(format!(
            "degree {} exceeds the requested certificate capacity {}",
            p.degree(),
            cap
        )));
    }
    let cert = match parity {
        Parity::Even => {
            let (s1, s2) = even_decompose(p, d)?;
            SosCertificate { parity, d, s1, s2 }
        }
        Parity::Odd => {
            // q = lambda * p is even of degree <= 2(d+1) with q(0) = 0,
            // so its first square carries an exact factor lambda which
            // divides back out: p = lambda s1^2 + (1 - lambda) s2^2.
            let mut q_coeffs = vec![0.0];
            q_coeffs.extend_from_slice(p.coeffs());
            let q = UniPoly::new(q_coeffs);
            let (big_s1, big_s2) = even_decompose(&q, d + 1)?;
            let s1 = strip_forced_root(&big_s1, p.max_abs_coeff())?;
            SosCertificate {
                parity,
                d,
                s1,
                s2: big_s2,
            }
        }
    };
    let residual = verify_certificate(p, &cert);
    if residual > 1e-8 * p.max_abs_coeff() {
        return Err(CertifyError::Numerical(format!(
            "certificate residual {residual:.3e} too large"
        )));
    }
    Ok(cert)
}

/// Removes the structurally forced root at 0: the constant term must be
/// negligible (it only carries factorization noise), after which the
/// coefficients shift down by one.
fn strip_forced_root(s: &UniPoly, scale: f64) -> Result<UniPoly, CertifyError> {
    if s.is_zero() {
        return Ok(UniPoly::zero());
    }
    let coeffs = s.coeffs();
    if coeffs[0].abs() > 1e-6 * (1.0 + scale.sqrt()) {
        return Err(CertifyError::Numerical(format!(
            "expected a root at 0, constant term is {}",
            coeffs[0]
        )));
    }
    Ok(UniPoly::new(coeffs[1..].to_vec()))
}

/// Decompose `p` (nonnegative on `[0, 1]`, not identically zero) as a
/// weighted sum of squares; the parity is read off `deg p`.
pub fn sos_decompose(p: &UniPoly) -> Result<SosCertificate, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let deg = p.degree();
    if deg % 2 == 0 {
        sos_decompose_with(p, Parity::Even, deg / 2)
    } else {
        sos_decompose_with(p, Parity::Odd, (deg - 1) / 2)
    }
}

// ---------------------------------------------------------------------
// Gram systems and witnesses.
// ---------------------------------------------------------------------

/// One linear equation of a Gram system: the Taylor coefficient
/// `taylor[k]` equals a signed sum of entries of `A` and `B`.
#[derive(Clone, Debug)]
pub struct GramEquation {
    pub taylor_index: usize,
    /// Entries `(i, j, weight)` contributing `weight * A[i][j]`.
    pub a_entries: Vec<(usize, usize, f64)>,
    /// Entries `(i, j, weight)` contributing `weight * B[i][j]`.
    pub b_entries: Vec<(usize, usize, f64)>,
}

/// The linear system tying Gram matrix entries to Taylor coefficients of
/// the segment polynomial:
///
/// ```text
/// even (deg 2d):    p = lambda^2 L'AL + lambda (1 - lambda) L'BL,
///                   A, B symmetric d x d, L = (1, lambda, ..., lambda^(d-1))
/// odd (deg 2d+1):   p = lambda L'AL + lambda^2 (1 - lambda) M'BM,
///                   A of size d+1, B of size d
/// ```
///
/// Matching coefficients of `lambda^k` for `k = 0..deg` gives one
/// equation per Taylor coefficient; the `k = 0` equation reads `0 =
/// taylor[0]`, which encodes the membership requirement `g(x) = 0`.
#[derive(Clone, Debug)]
pub struct GramSystem {
    pub parity: Parity,
    pub d: usize,
    pub a_size: usize,
    pub b_size: usize,
    pub equations: Vec<GramEquation>,
}

fn sum_over_diagonal(size: usize, total: isize) -> Vec<(usize, usize, f64)> {
    let mut entries = Vec::new();
    if total < 0 {
        return entries;
    }
    for i in 0..size {
        let j = total - i as isize;
        if j >= 0 && (j as usize) < size {
            entries.push((i, j as usize, 1.0));
        }
    }
    entries
}

impl GramSystem {
    /// Builds the system for the given parity and degree parameter.
    pub fn build(parity: Parity, d: usize) -> GramSystem {
        let (a_size, b_size, deg) = match parity {
            Parity::Even => (d, d, 2 * d),
            Parity::Odd => (d + 1, d, 2 * d + 1),
        };
        let mut equations = Vec::with_capacity(deg + 1);
        for k in 0..=deg {
            let (a_entries, b_entries) = match parity {
                Parity::Even => {
                    // lambda^2 L'AL contributes at k - 2; the weight
                    // lambda(1-lambda) spreads B over k - 1 and k - 2.
                    let a = sum_over_diagonal(a_size, k as isize - 2);
                    let mut b = sum_over_diagonal(b_size, k as isize - 1);
                    for (i, j, w) in sum_over_diagonal(b_size, k as isize - 2) {
                        b.push((i, j, -w));
                    }
                    (a, b)
                }
                Parity::Odd => {
                    // lambda L'AL contributes at k - 1; the weight
                    // lambda^2(1-lambda) spreads B over k - 2 and k - 3.
                    let a = sum_over_diagonal(a_size, k as isize - 1);
                    let mut b = sum_over_diagonal(b_size, k as isize - 2);
                    for (i, j, w) in sum_over_diagonal(b_size, k as isize - 3) {
                        b.push((i, j, -w));
                    }
                    (a, b)
                }
            };
            equations.push(GramEquation {
                taylor_index: k,
                a_entries,
                b_entries,
            });
        }
        GramSystem {
            parity,
            d,
            a_size,
            b_size,
            equations,
        }
    }

    /// Residuals of all equations against concrete matrices and Taylor
    /// coefficients (missing high-order coefficients default to zero).
    pub fn residuals(&self, a: &DMatrix<f64>, b: &DMatrix<f64>, taylor: &[f64]) -> Vec<f64> {
        assert_eq!(a.nrows(), self.a_size);
        assert_eq!(b.nrows(), self.b_size);
        self.equations
            .iter()
            .map(|eq| {
                let lhs_a: f64 = eq.a_entries.iter().map(|&(i, j, w)| w * a[(i, j)]).sum();
                let lhs_b: f64 = eq.b_entries.iter().map(|&(i, j, w)| w * b[(i, j)]).sum();
                let t = taylor.get(eq.taylor_index).copied().unwrap_or(0.0);
                lhs_a + lhs_b - t
            })
            .collect()
    }

    pub fn max_residual(&self, a: &DMatrix<f64>, b: &DMatrix<f64>, taylor: &[f64]) -> f64 {
        self.residuals(a, b, taylor)
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
}

/// PSD matrices witnessing relaxation membership; the constructive path
/// always returns rank-1 factors.
#[derive(Clone, Debug)]
pub struct GramWitness {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
}

impl GramWitness {
    /// Smallest eigenvalue over both matrices (PSD means `>= -1e-9` up
    /// to trace scale).
    pub fn min_eigenvalue(&self) -> f64 {
        let min_of = |m: &DMatrix<f64>| -> f64 {
            if m.nrows() == 0 {
                return 0.0;
            }
            m.clone()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .fold(f64::INFINITY, |acc, &v| acc.min(v))
        };
        min_of(&self.a).min(min_of(&self.b))
    }
}

/// Builds the Gram system for an instance along with the Taylor
/// coefficients `taylor[k] = p_x^(k)(0) / k!` of the segment polynomial.
/// The parity comes from `deg g`, not from the (possibly degenerate)
/// segment restriction.
pub fn gram_system(g: &MultiPoly, xbar: &Point, x: &Point) -> (GramSystem, Vec<f64>) {
    assert!(g.degree() >= 1, "constraint must be nonconstant");
    let p = g.restrict_to_segment(&x.coords, &xbar.coords);
    let deg = g.degree() as usize;
    let (parity, d) = if deg % 2 == 0 {
        (Parity::Even, deg / 2)
    } else {
        (Parity::Odd, (deg - 1) / 2)
    };
    let mut taylor = p.coeffs().to_vec();
    taylor.resize(deg + 1, 0.0);
    (GramSystem::build(parity, d), taylor)
}

fn rank_one(c: &UniPoly, size: usize) -> DMatrix<f64> {
    let mut v = c.coeffs().to_vec();
    v.resize(size, 0.0);
    let col = DMatrix::from_column_slice(size, 1, &v);
    &col * col.transpose()
}

/// Constructs a rank-1 PSD witness for the Gram system of `(g, xbar, x)`
/// or reports that none exists (`x` not in the relaxation).  `x` must be
/// on the surface `g = 0`.
pub fn gram_witness(
    g: &MultiPoly,
    xbar: &Point,
    x: &Point,
) -> Result<Option<GramWitness>, CertifyError> {
    let p_raw = g.restrict_to_segment(&x.coords, &xbar.coords);
    let scale = 1.0 + p_raw.max_abs_coeff();
    let at_zero = p_raw.eval(0.0);
    if at_zero.abs() > 1e-7 * scale {
        return Err(CertifyError::OffSurface(at_zero));
    }
    // The theorem's p has p(0) = 0 exactly; drop the numerical residue.
    let mut coeffs = p_raw.coeffs().to_vec();
    if !coeffs.is_empty() {
        coeffs[0] = 0.0;
    }
    let p = UniPoly::new(coeffs);
    if !p.is_nonnegative_on_unit() {
        return Ok(None);
    }
    let (system, taylor) = gram_system(g, xbar, x);
    let witness = if p.is_zero() {
        GramWitness {
            a: DMatrix::zeros(system.a_size, system.a_size),
            b: DMatrix::zeros(system.b_size, system.b_size),
        }
    } else {
        let cert = sos_decompose_with(&p, system.parity, system.d)?;
        match system.parity {
            Parity::Even => {
                // p = s1^2 + w s2^2 with s1(0)^2 = p(0) = 0: the first
                // square carries the forced factor lambda.
                let s1_hat = strip_forced_root(&cert.s1, p.max_abs_coeff())?;
                GramWitness {
                    a: rank_one(&s1_hat, system.a_size),
                    b: rank_one(&cert.s2, system.b_size),
                }
            }
            Parity::Odd => {
                // p(0) = s2(0)^2 = 0: the second square carries lambda.
                let s2_hat = strip_forced_root(&cert.s2, p.max_abs_coeff())?;
                GramWitness {
                    a: rank_one(&cert.s1, system.a_size),
                    b: rank_one(&s2_hat, system.b_size),
                }
            }
        }
    };
    let residual = system.max_residual(&witness.a, &witness.b, &taylor);
    let t_scale = 1.0 + taylor.iter().fold(0.0f64, |acc, t| acc.max(t.abs()));
    if residual > 1e-8 * t_scale {
        return Err(CertifyError::Numerical(format!(
            "witness residual {residual:.3e} exceeds tolerance"
        )));
    }
    Ok(Some(witness))
}
