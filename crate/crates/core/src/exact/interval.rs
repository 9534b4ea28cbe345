//! Closed intervals of doubles with outward rounding.
//!
//! Every operation rounds the lower bound toward −∞ and the upper bound toward
//! +∞, but only when the floating-point result is inexact: the rounding error
//! of each operation is recovered exactly (TwoSum / FMA) and the bound is moved
//! by one ulp in the direction of the error. Exact results such as `0 * x` stay
//! exact, which keeps sign tests at interval endpoints sharp.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Below this magnitude the error-free transforms may lose exactness.
const TINY: f64 = 1e-290;

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[empty]")
        } else {
            write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
        }
    }
}

/// Rounding helpers: `s` is the rounded result and `err` the exact residual
/// (true value = s + err).
#[inline]
fn down(s: f64, err: f64) -> f64 {
    if !s.is_finite() {
        return if s.is_nan() { f64::NEG_INFINITY } else { s };
    }
    if s.abs() < TINY {
        return s.next_down();
    }
    if err < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
fn up(s: f64, err: f64) -> f64 {
    if !s.is_finite() {
        return if s.is_nan() { f64::INFINITY } else { s };
    }
    if s.abs() < TINY {
        if s == 0.0 && err == 0.0 {
            return 0.0;
        }
        return s.next_up();
    }
    if err > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn add_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    if b == 0.0 {
        return a;
    }
    let (s, e) = two_sum(a, b);
    if s == 0.0 {
        return if e < 0.0 { (-0.0f64).next_down() } else { 0.0 };
    }
    down(s, e)
}

#[inline]
fn add_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    if b == 0.0 {
        return a;
    }
    let (s, e) = two_sum(a, b);
    if s == 0.0 {
        return if e > 0.0 { 0.0f64.next_up() } else { 0.0 };
    }
    up(s, e)
}

#[inline]
fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return p;
    }
    down(p, a.mul_add(b, -p))
}

#[inline]
fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return p;
    }
    up(p, a.mul_add(b, -p))
}

#[inline]
fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() || b.is_infinite() {
        return if q.is_nan() { f64::NEG_INFINITY } else { q.next_down() };
    }
    // a = q*b + r exactly; true quotient = q + r/b
    let r = (-q).mul_add(b, a);
    let err = if r == 0.0 {
        0.0
    } else if (r > 0.0) == (b > 0.0) {
        1.0
    } else {
        -1.0
    };
    down(q, err)
}

#[inline]
fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() || b.is_infinite() {
        return if q.is_nan() { f64::INFINITY } else { q.next_up() };
    }
    let r = (-q).mul_add(b, a);
    let err = if r == 0.0 {
        0.0
    } else if (r > 0.0) == (b > 0.0) {
        1.0
    } else {
        -1.0
    };
    up(q, err)
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const EMPTY: Interval = Interval { lo: f64::INFINITY, hi: f64::NEG_INFINITY };

    /// Panics if `lo > hi` or either bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan());
        Interval { lo: x, hi: x }
    }

    /// Tightest double interval containing the rational `r`.
    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Interval::ZERO;
        }
        let approx = r.to_f64().unwrap_or(f64::NAN);
        if !approx.is_finite() {
            return if r.is_positive() {
                Interval { lo: f64::MAX, hi: f64::INFINITY }
            } else {
                Interval { lo: f64::NEG_INFINITY, hi: -f64::MAX }
            };
        }
        let exact = |v: f64| BigRational::from_f64(v).expect("finite double");
        let mut lo = approx;
        while lo.is_finite() && exact(lo) > *r {
            lo = lo.next_down();
        }
        let mut hi = approx;
        while hi.is_finite() && exact(hi) < *r {
            hi = hi.next_up();
        }
        Interval { lo, hi }
    }

    pub fn from_integer(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        if self.is_empty() {
            return false;
        }
        let lo_ok = !self.lo.is_finite() || BigRational::from_f64(self.lo).unwrap() <= *r;
        let hi_ok = !self.hi.is_finite() || BigRational::from_f64(self.hi).unwrap() >= *r;
        lo_ok && hi_ok
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    pub fn width(&self) -> f64 {
        add_up(self.hi, -self.lo)
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return if self.lo.is_infinite() && self.hi.is_infinite() {
                0.0
            } else if self.lo.is_infinite() {
                self.hi
            } else {
                self.lo
            };
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value over the interval.
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo > hi {
            Interval::EMPTY
        } else {
            Interval { lo, hi }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval { lo: mul_down(a.lo, a.lo), hi: mul_up(a.hi, a.hi) }
    }

    pub fn powi(&self, n: u32) -> Interval {
        match n {
            0 => Interval::ONE,
            1 => *self,
            _ => {
                let half = self.powi(n / 2).sqr();
                if n.is_multiple_of(2) {
                    half
                } else {
                    half * *self
                }
            }
        }
    }

    pub fn recip(&self) -> Interval {
        Interval::ONE / *self
    }

    /// `self * 2^k` exactly (barring overflow/underflow).
    pub fn scale_pow2(&self, k: i32) -> Interval {
        let f = 2f64.powi(k);
        Interval { lo: mul_down(self.lo, f), hi: mul_up(self.hi, f) }
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        if self.is_empty() {
            return self;
        }
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval { lo: add_down(self.lo, rhs.lo), hi: add_up(self.hi, rhs.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        // 0 * inf is treated as 0: bounds are finite enclosures of finite values
        let pairs = [(a, c), (a, d), (b, c), (b, d)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in pairs {
            let (l, h) = if x == 0.0 || y == 0.0 { (0.0, 0.0) } else { (mul_down(x, y), mul_up(x, y)) };
            lo = lo.min(l);
            hi = hi.max(h);
        }
        Interval { lo, hi }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        if rhs.contains_zero() {
            return Interval::ENTIRE;
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let pairs = [(a, c), (a, d), (b, c), (b, d)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in pairs {
            lo = lo.min(div_down(x, y));
            hi = hi.max(div_up(x, y));
        }
        Interval { lo, hi }
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |acc, x| acc + x)
    }
}

/// Interval Horner evaluation of `Σ coeffs[k] x^k`.
pub fn horner(coeffs: &[Interval], x: Interval) -> Interval {
    let mut acc = Interval::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc * x + *c;
    }
    acc
}
