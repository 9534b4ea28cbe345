//! Exact Laurent polynomials in π with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::interval::Interval;
use super::parse::{parse_laurent, ParseError};
use super::pi::{pi, pi_rational_bounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_interval(iv: &Interval) -> Option<Sign> {
        if iv.lo > 0.0 {
            Some(Sign::Positive)
        } else if iv.hi < 0.0 {
            Some(Sign::Negative)
        } else if iv.lo == 0.0 && iv.hi == 0.0 {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// `Σ c_e π^e` over integer exponents `e`, stored without zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiExpr {
    terms: BTreeMap<i32, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PiExpr {
    pub fn zero() -> Self {
        PiExpr::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    /// `c·π^e`
    pub fn monomial(c: BigRational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PiExpr { terms }
    }

    pub fn pi_pow(e: i32) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    /// π/2
    pub fn half_pi() -> Self {
        Self::monomial(rat(1, 2), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(it: I) -> Self {
        let mut out = PiExpr::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Single term `c·π^e`, if the expression has that shape.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Multiplicative inverse; only monomials are invertible in this ring.
    pub fn recip(&self) -> Option<PiExpr> {
        let (c, e) = self.as_monomial()?;
        Some(PiExpr::monomial(c.recip(), -e))
    }

    pub fn scale(&self, k: &BigRational) -> PiExpr {
        if k.is_zero() {
            return PiExpr::zero();
        }
        PiExpr { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn shift_pi(&self, de: i32) -> PiExpr {
        PiExpr { terms: self.terms.iter().map(|(e, c)| (e + de, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> PiExpr {
        let mut acc = PiExpr::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Interval enclosure given an enclosure of π.
    pub fn eval(&self, pi_iv: Interval) -> Interval {
        if self.is_zero() {
            return Interval::ZERO;
        }
        let mut acc = Interval::ZERO;
        for (e, c) in &self.terms {
            let p = if *e >= 0 { pi_iv.powi(*e as u32) } else { pi_iv.powi((-*e) as u32).recip() };
            acc = acc + Interval::from_rational(c) * p;
        }
        acc
    }

    /// Enclosure using the cached double-precision π.
    pub fn enclose(&self) -> Interval {
        self.eval(pi())
    }

    /// Exact rational bracket of the value for π ∈ [lo, hi], lo > 0.
    pub fn eval_rational_bounds(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut out_lo = BigRational::zero();
        let mut out_hi = BigRational::zero();
        for (e, c) in &self.terms {
            let (a, b) = if *e >= 0 {
                (pow_rat(lo, *e as u32), pow_rat(hi, *e as u32))
            } else {
                let n = (-*e) as u32;
                (pow_rat(hi, n).recip(), pow_rat(lo, n).recip())
            };
            // a <= π^e <= b
            if c.is_positive() {
                out_lo += c * &a;
                out_hi += c * &b;
            } else {
                out_lo += c * &b;
                out_hi += c * &a;
            }
        }
        (out_lo, out_hi)
    }

    /// Exact sign. A Laurent polynomial in π with rational coefficients
    /// vanishes only when it is structurally zero, so refinement terminates.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { Sign::Positive } else { Sign::Negative };
        }
        if let Some(s) = Sign::of_interval(&self.enclose()) {
            return s;
        }
        let mut bits = 64u32;
        loop {
            let (plo, phi) = pi_rational_bounds(bits);
            let (lo, hi) = self.eval_rational_bounds(&plo, &phi);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits = bits.saturating_mul(2);
        }
    }

    pub fn cmp_value(&self, other: &PiExpr) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// Double approximation; for display only.
    pub fn approx(&self) -> f64 {
        self.enclose().mid()
    }
}

fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow(x.clone(), n as usize)
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let body = if *e == 0 {
                fmt_rational(&mag)
            } else if mag.is_one() {
                format!("pi^{e}")
            } else {
                format!("{}*pi^{e}", fmt_rational(&mag))
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiExpr({self})")
    }
}

impl Serialize for PiExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for PiExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let l = parse_laurent(s, None)?;
        l.into_constant().ok_or_else(|| ParseError::new("expected a constant expression"))
    }
}

impl From<BigRational> for PiExpr {
    fn from(r: BigRational) -> Self {
        PiExpr::rational(r)
    }
}

impl From<i64> for PiExpr {
    fn from(n: i64) -> Self {
        PiExpr::int(n)
    }
}

impl<'a> Add<&'a PiExpr> for &'a PiExpr {
    type Output = PiExpr;
    fn add(self, rhs: &PiExpr) -> PiExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PiExpr {
    type Output = PiExpr;
    fn add(mut self, rhs: PiExpr) -> PiExpr {
        self += &rhs;
        self
    }
}

impl AddAssign<&PiExpr> for PiExpr {
    fn add_assign(&mut self, rhs: &PiExpr) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&PiExpr> for PiExpr {
    fn sub_assign(&mut self, rhs: &PiExpr) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a PiExpr> for &'a PiExpr {
    type Output = PiExpr;
    fn sub(self, rhs: &PiExpr) -> PiExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for PiExpr {
    type Output = PiExpr;
    fn sub(mut self, rhs: PiExpr) -> PiExpr {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a PiExpr> for &'a PiExpr {
    type Output = PiExpr;
    fn mul(self, rhs: &PiExpr) -> PiExpr {
        let mut out = PiExpr::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for PiExpr {
    type Output = PiExpr;
    fn mul(self, rhs: PiExpr) -> PiExpr {
        &self * &rhs
    }
}

impl Neg for PiExpr {
    type Output = PiExpr;
    fn neg(self) -> PiExpr {
        PiExpr { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Neg for &PiExpr {
    type Output = PiExpr;
    fn neg(self) -> PiExpr {
        -(self.clone())
    }
}
