//! Closed-interval arithmetic over `f64`.
//!
//! An [`Interval`] is a nonempty closed interval `[lo, hi]` with finite
//! endpoints.  Arithmetic follows the usual outward-bounding rules except
//! that we do not change the rounding mode: callers that need a safety
//! margin against the last few ulps (the polynomial range bounder does)
//! add an explicit pad instead.  Integer powers are evaluated as powers,
//! not repeated multiplication, so even powers of sign-crossing intervals
//! stay nonnegative: `[-1,2]^2 = [0,4]`.
//!
//! [`IntervalVector`] is an axis-aligned box, the working object of the
//! branch-and-prune code.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Nonempty closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// New interval; panics if `lo > hi` or either endpoint is not finite.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(
            lo.is_finite() && hi.is_finite() && lo <= hi,
            "invalid interval [{lo}, {hi}]"
        );
        Interval { lo, hi }
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Largest absolute value attained on the interval.
    pub fn magnitude(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self^k` for integer `k >= 0`, with exact treatment of even powers.
    pub fn powi(&self, k: u32) -> Interval {
        match k {
            0 => Interval::point(1.0),
            1 => *self,
            _ => {
                let (pl, ph) = (self.lo.powi(k as i32), self.hi.powi(k as i32));
                if k % 2 == 1 {
                    Interval::new(pl, ph)
                } else if self.lo >= 0.0 {
                    Interval::new(pl, ph)
                } else if self.hi <= 0.0 {
                    Interval::new(ph, pl)
                } else {
                    Interval::new(0.0, pl.max(ph))
                }
            }
        }
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval::new(c * self.lo, c * self.hi)
        } else {
            Interval::new(c * self.hi, c * self.lo)
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Widen both endpoints outward by `pad >= 0`.
    pub fn pad(&self, pad: f64) -> Interval {
        Interval::new(self.lo - pad, self.hi + pad)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::new(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let mut lo = c[0];
        let mut hi = c[0];
        for &v in &c[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Interval::new(lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Axis-aligned box: one [`Interval`] per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalVector {
    comps: Vec<Interval>,
}

impl IntervalVector {
    pub fn new(comps: Vec<Interval>) -> Self {
        assert!(!comps.is_empty(), "empty interval vector");
        IntervalVector { comps }
    }

    /// Box from coordinate-wise bound slices (must have equal lengths).
    pub fn from_bounds(lo: &[f64], hi: &[f64]) -> Self {
        assert_eq!(lo.len(), hi.len(), "bound length mismatch");
        IntervalVector::new(
            lo.iter()
                .zip(hi)
                .map(|(&l, &h)| Interval::new(l, h))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> Interval {
        self.comps[i]
    }

    pub fn comps(&self) -> &[Interval] {
        &self.comps
    }

    pub fn set_comp(&mut self, i: usize, iv: Interval) {
        self.comps[i] = iv;
    }

    pub fn lo(&self) -> Vec<f64> {
        self.comps.iter().map(|iv| iv.lo).collect()
    }

    pub fn hi(&self) -> Vec<f64> {
        self.comps.iter().map(|iv| iv.hi).collect()
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.comps.iter().map(|iv| iv.midpoint()).collect()
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.comps.iter().zip(x).all(|(iv, &xi)| iv.contains(xi))
    }

    /// Index of the coordinate with the largest width after dividing by the
    /// matching entry of `reference` (callers pass the widths of the root
    /// box so that splits stay balanced across unevenly sized coordinates).
    pub fn widest_relative(&self, reference: &[f64]) -> usize {
        let mut best = 0;
        let mut best_w = f64::NEG_INFINITY;
        for (i, iv) in self.comps.iter().enumerate() {
            let denom = if reference[i] > 0.0 {
                reference[i]
            } else {
                1.0
            };
            let w = iv.width() / denom;
            if w > best_w {
                best_w = w;
                best = i;
            }
        }
        best
    }

    /// Split coordinate `i` at its midpoint; returns (lower half, upper half).
    pub fn bisect(&self, i: usize) -> (IntervalVector, IntervalVector) {
        let m = self.comps[i].midpoint();
        let mut left = self.clone();
        let mut right = self.clone();
        left.comps[i] = Interval::new(self.comps[i].lo, m);
        right.comps[i] = Interval::new(m, self.comps[i].hi);
        (left, right)
    }

    /// Coordinate-wise hull with another box of the same dimension.
    /// Widen every component by `pad` on both sides.
    pub fn pad(&self, pad: f64) -> IntervalVector {
        IntervalVector::new(self.comps.iter().map(|iv| iv.pad(pad)).collect())
    }

    pub fn hull(&self, other: &IntervalVector) -> IntervalVector {
        assert_eq!(self.dim(), other.dim());
        IntervalVector::new(
            self.comps
                .iter()
                .zip(other.comps())
                .map(|(a, b)| a.hull(b))
                .collect(),
        )
    }

    /// Coordinate-wise intersection; `None` if any coordinate is empty.
    pub fn intersect(&self, other: &IntervalVector) -> Option<IntervalVector> {
        assert_eq!(self.dim(), other.dim());
        let mut comps = Vec::with_capacity(self.dim());
        for (a, b) in self.comps.iter().zip(other.comps()) {
            let lo = a.lo.max(b.lo);
            let hi = a.hi.min(b.hi);
            if lo > hi {
                return None;
            }
            comps.push(Interval::new(lo, hi));
        }
        Some(IntervalVector::new(comps))
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
