//! Taylor models in a local variable `h ∈ [0, r]`:
//!
//! `f(h) ∈ p/h + Σ_{k≤K} c_k h^k + h^{K+1}·rem`,
//!
//! where each `c_k` encloses the true Taylor coefficient and `rem` encloses
//! `(f(h) − p/h − Σ c*_k h^k)/h^{K+1}` for every `h` in `(0, r]`. Keeping the
//! coefficients exact in this sense lets callers substitute exactly known
//! coefficients for the low orders.

use num_traits::ToPrimitive;

use crate::exact::elementary::{cos_point, sin_point};
use crate::exact::interval::horner;
use crate::exact::pi::{half_pi, pi};
use crate::exact::{BigRational, Interval, PiExpr};
use crate::series::{cos_taylor, sin_taylor};

use super::enclose::{DomainError, Kernel};

#[derive(Debug, Clone)]
pub struct Tm {
    pub principal: Interval,
    pub c: Vec<Interval>,
    pub rem: Interval,
    pub r: f64,
}

fn fact(n: usize) -> Interval {
    (1..=n).fold(Interval::ONE, |acc, k| acc * Interval::point(k as f64))
}

fn rat(r: &BigRational) -> Interval {
    Interval::from_rational(r)
}

impl Tm {
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn domain(&self) -> Interval {
        Interval::new(0.0, self.r)
    }

    /// Builds a model from (possibly too many) coefficients, folding the
    /// terms above order `k` into the remainder.
    pub fn from_coeffs(mut c: Vec<Interval>, rem: Interval, k: usize, r: f64) -> Tm {
        let h = Interval::new(0.0, r);
        let mut rem = rem;
        if c.len() > k + 1 {
            let high = c.split_off(k + 1);
            rem = rem + horner(&high, h);
        }
        c.resize(k + 1, Interval::ZERO);
        Tm { principal: Interval::ZERO, c, rem, r }
    }

    pub fn constant(v: Interval, k: usize, r: f64) -> Tm {
        Tm::from_coeffs(vec![v], Interval::ZERO, k, r)
    }

    /// `a + b·h`.
    pub fn linear(a: Interval, b: Interval, k: usize, r: f64) -> Tm {
        Tm::from_coeffs(vec![a, b], Interval::ZERO, k, r)
    }

    fn zip(&self, o: &Tm, f: impl Fn(Interval, Interval) -> Interval) -> Tm {
        debug_assert_eq!(self.c.len(), o.c.len());
        Tm {
            principal: f(self.principal, o.principal),
            c: self.c.iter().zip(&o.c).map(|(a, b)| f(*a, *b)).collect(),
            rem: f(self.rem, o.rem),
            r: self.r.min(o.r),
        }
    }

    pub fn add(&self, o: &Tm) -> Tm {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Tm) -> Tm {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: Interval) -> Tm {
        Tm { principal: self.principal * s, c: self.c.iter().map(|a| *a * s).collect(), rem: self.rem * s, r: self.r }
    }

    pub fn add_const(&self, v: Interval) -> Tm {
        let mut out = self.clone();
        out.c[0] = out.c[0] + v;
        out
    }

    fn has_principal(&self) -> bool {
        self.principal != Interval::ZERO
    }

    /// Enclosure of the polynomial part over `h`.
    fn poly_range(&self, h: Interval) -> Interval {
        horner(&self.c, h)
    }

    pub fn mul(&self, o: &Tm) -> Tm {
        assert!(!self.has_principal() && !o.has_principal(), "products of models with a principal part are not formed");
        let k = self.order();
        let r = self.r.min(o.r);
        let h = Interval::new(0.0, r);
        let mut c = vec![Interval::ZERO; k + 1];
        let mut high = vec![Interval::ZERO; k];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                if i + j <= k {
                    c[i + j] = c[i + j] + *a * *b;
                } else {
                    high[i + j - k - 1] = high[i + j - k - 1] + *a * *b;
                }
            }
        }
        let rem = horner(&high, h)
            + self.poly_range(h) * o.rem
            + o.poly_range(h) * self.rem
            + h.powi(k as u32 + 1) * self.rem * o.rem;
        Tm { principal: Interval::ZERO, c, rem, r }
    }

    /// Multiplication by `h`.
    pub fn mul_h(&self) -> Tm {
        let k = self.order();
        let h = self.domain();
        let mut c = Vec::with_capacity(k + 1);
        c.push(self.principal);
        c.extend_from_slice(&self.c[..k]);
        Tm { principal: Interval::ZERO, c, rem: self.c[k] + h * self.rem, r: self.r }
    }

    /// `1/f` for a model with no principal part and a constant term bounded away from 0.
    pub fn recip(&self) -> Tm {
        assert!(!self.has_principal());
        let k = self.order();
        let h = self.domain();
        let a0 = self.c[0];
        if a0.contains_zero() {
            return self.failed();
        }
        let inv0 = a0.recip();
        // f = a0·(1 + u) with u(0) = 0
        let mut u = self.scale(inv0);
        u.c[0] = Interval::ZERO;
        // ũ = u/h and the range of u itself
        let u_over_h = horner(&u.c[1..], h) + h.powi(k as u32) * u.rem;
        let u_range = h * u_over_h;
        let one_plus = Interval::ONE + u_range;
        if one_plus.lo <= 0.0 {
            return self.failed();
        }
        let neg_u = u.scale(Interval::point(-1.0));
        let mut term = Tm::constant(Interval::ONE, k, self.r);
        let mut sum = term.clone();
        for _ in 1..=k {
            term = term.mul(&neg_u);
            sum = sum.add(&term);
        }
        // tail (−u)^{K+1}/(1+u) = h^{K+1}·(−ũ)^{K+1}/(1+u)
        sum.rem = sum.rem + (-u_over_h).powi(k as u32 + 1) / one_plus;
        sum.scale(inv0)
    }

    fn failed(&self) -> Tm {
        Tm { principal: Interval::ZERO, c: vec![Interval::ENTIRE; self.c.len()], rem: Interval::ENTIRE, r: self.r }
    }

    /// Range over `h ⊂ [0, r]`; the principal part needs `h.lo > 0`.
    pub fn range(&self, h: Interval) -> Interval {
        let k = self.order();
        let mut out = self.poly_range(h) + h.powi(k as u32 + 1) * self.rem;
        if self.has_principal() {
            out = out + self.principal / h;
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.rem.lo.is_finite() && self.rem.hi.is_finite()
    }
}

/// sin h with Lagrange remainder.
pub fn sin_tm(k: usize, r: f64) -> Tm {
    let c = (0..=k).map(|n| rat(&sin_taylor(n))).collect();
    let b = fact(k + 1).recip();
    Tm::from_coeffs(c, Interval::new(-b.hi, b.hi), k, r)
}

pub fn cos_tm(k: usize, r: f64) -> Tm {
    let c = (0..=k).map(|n| rat(&cos_taylor(n))).collect();
    let b = fact(k + 1).recip();
    Tm::from_coeffs(c, Interval::new(-b.hi, b.hi), k, r)
}

/// sinc h; its derivatives are bounded by `1/(n+1)`.
pub fn sinc_tm(k: usize, r: f64) -> Tm {
    let c = (0..=k).map(|n| if n % 2 == 0 { rat(&crate::series::sinc_coeff(n / 2)) } else { Interval::ZERO }).collect();
    let b = (fact(k + 1) * Interval::point((k + 2) as f64)).recip();
    Tm::from_coeffs(c, Interval::new(-b.hi, b.hi), k, r)
}

/// h(s) = (sin s − s cos s)/s³ = ∫₀¹ u² sinc(us) du; its n-th derivative is
/// bounded by `1/((n+1)(n+3))`.
pub fn hfun_tm(k: usize, r: f64) -> Tm {
    let c = (0..=k)
        .map(|n| {
            if n % 2 == 1 {
                return Interval::ZERO;
            }
            let j = n / 2;
            let v = Interval::point((2 * j + 2) as f64) / fact(2 * j + 3);
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let b = (fact(k + 1) * Interval::point(((k + 2) * (k + 4)) as f64)).recip();
    Tm::from_coeffs(c, Interval::new(-b.hi, b.hi), k, r)
}

/// `1/(c − h)` for `c > r`.
pub fn geom_tm(cv: Interval, k: usize, r: f64) -> Tm {
    let inv = cv.recip();
    let mut c = Vec::with_capacity(k + 1);
    let mut p = inv;
    for _ in 0..=k {
        c.push(p);
        p = p * inv;
    }
    // remainder h^{K+1}/(c^{K+1}(c − h))
    let rem = (cv.powi(k as u32 + 1) * (cv - Interval::new(0.0, r))).recip();
    Tm { principal: Interval::ZERO, c, rem, r }
}

fn check_radius(r: f64, limit: f64) -> Result<(), DomainError> {
    if r > 0.0 && r < limit {
        Ok(())
    } else {
        Err(DomainError(format!("expansion radius {r} not below {limit}")))
    }
}

/// Model of a kernel at `x = 0`, moving right.
pub fn kernel_tm0(kernel: Kernel, k: usize, r: f64) -> Result<Tm, DomainError> {
    let p = pi();
    let two_over_pi = Interval::point(2.0) / p;
    let hp = half_pi();
    let lim = if kernel == Kernel::Sinc { 3.0 } else { 1.5 };
    check_radius(r, lim)?;
    let h_over_sinc = || hfun_tm(k, r).mul(&sinc_tm(k, r).recip());
    let tm = match kernel {
        Kernel::Sinc => sinc_tm(k, r),
        Kernel::SincRefl => cos_tm(k, r).mul(&geom_tm(hp, k, r)),
        Kernel::Tan => sin_tm(k, r).mul(&cos_tm(k, r).recip()),
        Kernel::Cot => {
            let mut m = h_over_sinc().mul_h().scale(Interval::point(-1.0));
            m.principal = Interval::ONE;
            m
        }
        Kernel::F => {
            let tan = sin_tm(k, r).mul(&cos_tm(k, r).recip());
            tan.sub(&geom_tm(hp, k, r).mul_h().scale(two_over_pi))
        }
        Kernel::G => h_over_sinc().mul_h().scale(Interval::point(-1.0)).add_const(two_over_pi),
        Kernel::Phi => {
            let quad = Tm::from_coeffs(vec![p.sqr(), Interval::ZERO, Interval::point(-4.0)], Interval::ZERO, k, r);
            quad.mul(&sinc_tm(k, r)).mul(&cos_tm(k, r).recip())
        }
        Kernel::Psi => {
            let lin = Tm::linear(p, Interval::point(-1.0), k, r).scale(Interval::point(4.0));
            lin.mul(&cos_tm(k, r)).mul(&sinc_tm(k, r).recip()).mul(&geom_tm(hp, k, r))
        }
    };
    Ok(tm)
}

/// Model of a non-reflected kernel at the point `s` (narrow interval), in
/// direction `sigma = ±1`: the function of `h` is `K(s + sigma·h)`.
pub fn kernel_tm_at(kernel: Kernel, s: Interval, sigma: f64, k: usize, r: f64) -> Result<Tm, DomainError> {
    if kernel.is_reflected() {
        return Err(DomainError("reflected kernels are expanded at 0 only".into()));
    }
    let sg = Interval::point(sigma);
    let (s0, c0) = (sin_point(s), cos_point(s));
    let (sh, ch) = (sin_tm(k, r), cos_tm(k, r));
    let sin = ch.scale(s0).add(&sh.scale(c0 * sg));
    let cos = ch.scale(c0).sub(&sh.scale(s0 * sg));
    let x = Tm::linear(s, sg, k, r);
    let tm = match kernel {
        Kernel::Sinc => sin.mul(&x.recip()),
        Kernel::Tan => sin.mul(&cos.recip()),
        Kernel::F => {
            let tan = sin.mul(&cos.recip());
            let t = Tm::linear(half_pi() - s, -sg, k, r);
            tan.sub(&x.mul(&t.recip()).scale(Interval::point(2.0) / pi()))
        }
        Kernel::Phi => {
            let quad = x.mul(&x).scale(Interval::point(-4.0)).add_const(pi().sqr());
            quad.mul(&sin).mul(&x.recip()).mul(&cos.recip())
        }
        _ => unreachable!(),
    };
    Ok(tm)
}

/// Model of `(e + sigma·h)^n` with exact `e`.
pub fn power_tm(e: Interval, sigma: f64, n: usize, k: usize, r: f64) -> Tm {
    let lin = Tm::linear(e, Interval::point(sigma), k, r);
    (0..n).fold(Tm::constant(Interval::ONE, k, r), |acc, _| acc.mul(&lin))
}

/// Taylor shift `p(s + sigma·h)` of a polynomial with enclosed coefficients.
pub fn shift_poly(coeffs: &[Interval], s: Interval, sigma: f64) -> Vec<Interval> {
    let mut a = coeffs.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            a[j] = a[j] + s * a[j + 1];
        }
    }
    if sigma < 0.0 {
        for (j, c) in a.iter_mut().enumerate() {
            if j % 2 == 1 {
                *c = -*c;
            }
        }
    }
    a
}

/// Exact series at `x = 0` of a kernel: the `1/h` coefficient and degrees `0..=deg`.
pub fn kernel_series0(kernel: Kernel, deg: usize) -> (Option<PiExpr>, Vec<PiExpr>) {
    use crate::approx::{series_at_zero, FunctionId};
    match kernel {
        Kernel::G => {
            let (_, mut c) = series_at_zero(FunctionId::Cot, deg);
            c[0] = PiExpr::monomial(BigRational::from_integer(2.into()), -1);
            (None, c)
        }
        Kernel::SincRefl => {
            // cos h · Σ (2/π)^{i+1} h^i
            let c = (0..=deg)
                .map(|n| {
                    (0..=n).fold(PiExpr::zero(), |acc, j| {
                        let g = PiExpr::monomial(
                            BigRational::from_integer(num_bigint::BigInt::from(2).pow((n - j + 1) as u32)),
                            -((n - j + 1) as i32),
                        );
                        &acc + &g.scale(&cos_taylor(j))
                    })
                })
                .collect();
            (None, c)
        }
        other => series_at_zero(other.series_function().expect("kernel has a series"), deg),
    }
}

/// `f64` value of a rational, for diagnostics.
pub fn approx_rational(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
