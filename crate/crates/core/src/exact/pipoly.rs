//! Dense univariate polynomials with `PiExpr` coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::interval::{horner, Interval};
use super::pi::pi;
use super::piexpr::{PiExpr, Sign};

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PiPoly {
    coeffs: Vec<PiExpr>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<PiExpr>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn zero() -> Self {
        PiPoly::default()
    }

    pub fn constant(c: PiExpr) -> Self {
        PiPoly::new(vec![c])
    }

    /// `c·v^k`
    pub fn monomial(c: PiExpr, k: usize) -> Self {
        let mut coeffs = vec![PiExpr::zero(); k + 1];
        coeffs[k] = c;
        PiPoly::new(coeffs)
    }

    /// The identity polynomial `v`.
    pub fn var() -> Self {
        Self::monomial(PiExpr::one(), 1)
    }

    pub fn coeffs(&self) -> &[PiExpr] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PiExpr {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &PiExpr) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: usize) -> PiPoly {
        if self.is_zero() {
            return PiPoly::zero();
        }
        let mut coeffs = vec![PiExpr::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PiPoly { coeffs }
    }

    /// Drops the lowest `k` coefficients and divides by `v^k`.
    pub fn unshift(&self, k: usize) -> PiPoly {
        PiPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Truncation to degree `n`.
    pub fn truncate(&self, n: usize) -> PiPoly {
        PiPoly::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    pub fn derivative(&self) -> PiPoly {
        PiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> PiPoly {
        let mut acc = PiPoly::constant(PiExpr::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `p(a + b·v)`, by Horner's scheme in the polynomial ring.
    pub fn compose_affine(&self, a: &PiExpr, b: &PiExpr) -> PiPoly {
        let lin = PiPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = PiPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &PiPoly::constant(c.clone());
        }
        acc
    }

    /// Exact value at a `PiExpr` point.
    pub fn eval_exact(&self, x: &PiExpr) -> PiExpr {
        let mut acc = PiExpr::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn coeff_enclosures(&self) -> Vec<Interval> {
        self.coeffs.iter().map(|c| c.eval(pi())).collect()
    }

    /// Interval enclosure of the value for all points in `x`.
    pub fn eval(&self, x: Interval) -> Interval {
        horner(&self.coeff_enclosures(), x)
    }

    /// Exact sign of every coefficient, or `None` on the first zero-free mix.
    pub fn coeff_signs(&self) -> Vec<Sign> {
        self.coeffs.iter().map(|c| c.sign()).collect()
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, None, &self.coeffs, 'v')
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiPoly({self})")
    }
}

/// Writes `principal/v + Σ (c_k)*v^k`, skipping zero coefficients.
pub fn fmt_poly(f: &mut fmt::Formatter<'_>, principal: Option<&PiExpr>, coeffs: &[PiExpr], var: char) -> fmt::Result {
    let mut first = true;
    let mut emit = |f: &mut fmt::Formatter<'_>, c: &PiExpr, mono: String| -> fmt::Result {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "({c})")
        } else {
            write!(f, "({c})*{mono}")
        }
    };
    if let Some(p) = principal.filter(|p| !p.is_zero()) {
        emit(f, p, format!("{var}^-1"))?;
    }
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        emit(f, c, mono)?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<'a> Add<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        if self.is_zero() || rhs.is_zero() {
            return PiPoly::zero();
        }
        let mut out = vec![PiExpr::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PiPoly::new(out)
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: PiPoly) -> PiPoly {
        &self + &rhs
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        &self - &rhs
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> PiExpr {
        s.parse().unwrap()
    }

    #[test]
    fn trims_and_degree() {
        let p = PiPoly::new(vec![c("1"), c("0"), c("0")]);
        assert_eq!(p.degree(), 0);
        assert_eq!(PiPoly::zero().valuation(), None);
        assert_eq!(PiPoly::monomial(c("pi"), 3).valuation(), Some(3));
    }

    #[test]
    fn affine_reexpression_agrees_pointwise() {
        // p(t) = 2/pi - t/3, t = pi/2 - x
        let p = PiPoly::new(vec![c("2/pi"), c("-1/3")]);
        let q = p.compose_affine(&PiExpr::half_pi(), &PiExpr::int(-1));
        assert_eq!(q.coeff(0), c("2/pi - pi/6"));
        assert_eq!(q.coeff(1), c("1/3"));
        let x = c("3/10");
        let t = &PiExpr::half_pi() - &x;
        assert_eq!(q.eval_exact(&x), p.eval_exact(&t));
    }

    #[test]
    fn arithmetic() {
        let a = PiPoly::new(vec![c("1"), c("pi")]);
        let sq = &a * &a;
        assert_eq!(sq, PiPoly::new(vec![c("1"), c("2*pi"), c("pi^2")]));
        assert_eq!(&sq - &sq, PiPoly::zero());
        assert_eq!(sq.derivative(), PiPoly::new(vec![c("2*pi"), c("2*pi^2")]));
        assert_eq!(a.pow(2), sq);
        assert_eq!(sq.unshift(1).shift(1), &sq - &PiPoly::constant(c("1")));
    }

    #[test]
    fn interval_eval_contains_exact() {
        let p = PiPoly::new(vec![c("1"), c("0"), c("-1/6"), c("0"), c("1/120")]);
        let x = c("1");
        let exact = p.eval_exact(&x).enclose();
        let iv = p.eval(Interval::point(1.0));
        assert!(iv.contains_interval(&exact) || iv.intersect(&exact) == exact);
        assert!(iv.width() < 1e-15);
    }
}
