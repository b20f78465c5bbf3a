//! Sparse multivariate polynomials over `f64`.
//!
//! A [`MultiPoly`] is a sum of terms `c * x1^e1 * ... * xn^en` kept in a
//! canonical form: terms sorted by (total degree, exponent vector), no two
//! terms with the same exponent vector, no explicitly zero coefficients.
//! Canonical form makes equality checks and serialisation deterministic.
//!
//! The operation that everything downstream leans on is
//! [`MultiPoly::restrict_to_segment`]: substituting the parametrised segment
//! `x + lambda * (xbar - x)` into the polynomial and expanding symbolically,
//! so that visibility questions about `g` become sign questions about a
//! univariate polynomial in `lambda` on `[0, 1]`.  The expansion is exact
//! term algebra (binomial products), not interpolation, so it inherits no
//! conditioning problems from sample placement.

use crate::interval::{Interval, IntervalVector};
use crate::unipoly::UniPoly;
use std::fmt;

/// A point of `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(!coords.is_empty(), "empty point");
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point::new(coords)
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point::new(coords.to_vec())
    }
}

/// One monomial `coeff * x^exps`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub exps: Vec<u32>,
}

impl Term {
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Sparse polynomial in `nvars` variables, canonical term order.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<Term>,
}

fn term_order(a: &Term, b: &Term) -> std::cmp::Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.exps.cmp(&b.exps))
}

impl MultiPoly {
    /// Build from raw `(coeff, exponents)` pairs; merges duplicates and
    /// drops zero coefficients.  Panics if an exponent vector has the wrong
    /// length.
    pub fn from_terms(nvars: usize, raw: &[(f64, &[u32])]) -> Self {
        let terms = raw
            .iter()
            .map(|(c, e)| {
                assert_eq!(e.len(), nvars, "exponent vector length != nvars");
                Term {
                    coeff: *c,
                    exps: e.to_vec(),
                }
            })
            .collect();
        MultiPoly { nvars, terms }.normalized()
    }

    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        MultiPoly::from_terms(nvars, &[(c, &vec![0; nvars])])
    }

    /// The single variable `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        MultiPoly::from_terms(nvars, &[(1.0, &e)])
    }

    fn normalized(mut self) -> Self {
        self.terms.sort_by(term_order);
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.exps == t.exps => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        self.terms = merged;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::total_degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars, "point dimension != nvars");
        self.terms
            .iter()
            .map(|t| {
                let mut v = t.coeff;
                for (xi, &e) in x.iter().zip(&t.exps) {
                    if e > 0 {
                        v *= xi.powi(e as i32);
                    }
                }
                v
            })
            .sum()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
        .normalized()
    }

    pub fn scale(&self, c: f64) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: c * t.coeff,
                exps: t.exps.clone(),
            })
            .collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
        .normalized()
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    coeff: a.coeff * b.coeff,
                    exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
                });
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
        .normalized()
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars);
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[i] > 0)
            .map(|t| {
                let mut e = t.exps.clone();
                e[i] -= 1;
                Term {
                    coeff: t.coeff * t.exps[i] as f64,
                    exps: e,
                }
            })
            .collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
        .normalized()
    }

    /// All partial derivatives.
    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Restriction of the polynomial to the segment `x + lambda*(xbar - x)`,
    /// as a univariate polynomial in `lambda`.  By construction
    /// `p(0) = self.eval(x)` and `p(1) = self.eval(xbar)`.
    pub fn restrict_to_segment(&self, x: &[f64], xbar: &[f64]) -> UniPoly {
        assert_eq!(x.len(), self.nvars, "point dimension != nvars");
        assert_eq!(xbar.len(), self.nvars, "point dimension != nvars");
        let deg = self.degree() as usize;
        let mut coeffs = vec![0.0; deg + 1];
        for t in &self.terms {
            // Expand coeff * prod_i (x_i + d_i*lambda)^{e_i} by convolving
            // the linear factors; exact term algebra.
            let mut acc = vec![t.coeff];
            for i in 0..self.nvars {
                let (a, b) = (x[i], xbar[i] - x[i]);
                for _ in 0..t.exps[i] {
                    let mut next = vec![0.0; acc.len() + 1];
                    for (k, &c) in acc.iter().enumerate() {
                        next[k] += c * a;
                        next[k + 1] += c * b;
                    }
                    acc = next;
                }
            }
            for (k, &c) in acc.iter().enumerate() {
                coeffs[k] += c;
            }
        }
        UniPoly::new(coeffs)
    }

    /// Natural interval extension, term by term.  Sound but loose when a
    /// variable repeats across terms (dependency).
    fn natural_range(&self, domain: &IntervalVector) -> Interval {
        let mut sum = Interval::point(0.0);
        for t in &self.terms {
            let mut acc = Interval::point(1.0);
            for (i, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    acc = acc * domain.comp(i).powi(e);
                }
            }
            sum = sum + acc.scale(t.coeff);
        }
        sum
    }

    /// Range bound over a box: the intersection of the natural interval
    /// extension with the mean-value form centred at the box midpoint,
    /// padded outward by `1e-12 * (1 + |bound|)` to absorb rounding.
    /// The mean-value form loses little to dependency on small boxes, so
    /// the bound tightens quadratically as the box shrinks.
    pub fn interval_eval(&self, domain: &IntervalVector) -> Interval {
        assert_eq!(domain.dim(), self.nvars, "box dimension != nvars");
        let natural = self.natural_range(domain);
        let centre = domain.midpoint();
        let mut mean_value = Interval::point(self.eval(&centre));
        for (i, gi) in self.gradient().iter().enumerate() {
            let offset = domain.comp(i) - Interval::point(centre[i]);
            mean_value = mean_value + gi.natural_range(domain) * offset;
        }
        let lo = natural.lo.max(mean_value.lo);
        let hi = natural.hi.min(mean_value.hi);
        // Both forms contain the true range; they can only fail to
        // overlap by rounding noise, in which case keep the natural one.
        let tight = if lo <= hi {
            Interval::new(lo, hi)
        } else {
            natural
        };
        let pad = 1e-12 * (1.0 + tight.magnitude());
        tight.pad(pad)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{}", t.coeff)?;
            } else if t.coeff >= 0.0 {
                write!(f, " + {}", t.coeff)?;
            } else {
                write!(f, " - {}", -t.coeff)?;
            }
            for (i, &e) in t.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
