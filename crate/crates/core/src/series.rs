//! Exact series coefficients: Bernoulli numbers, sinc/tan/cot expansions,
//! the Stečkin remainder coefficients α_k, the Becker–Stark coefficients C_k
//! and the ψ coefficients in product and closed form.

use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{PiExpr, PiPoly};

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * big(k))
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

/// Bernoulli number B_n with B_1 = −1/2, memoized.
///
/// Uses Σ_{j=0}^{n} C(n+1, j) B_j = 0.
pub fn bernoulli(n: usize) -> BigRational {
    static MEMO: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut table = memo.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        // row of binomials C(m+1, j)
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * big((m + 1 - j) as u64) / big(j as u64 + 1);
        }
        let bm = -acc / BigRational::from_integer(big(m as u64 + 1));
        table.push(bm);
    }
    table[n].clone()
}

/// |B_{2k}|
pub fn bernoulli_abs(k: usize) -> BigRational {
    assert!(k >= 1, "bernoulli_abs needs k >= 1");
    bernoulli(2 * k).abs()
}

/// Coefficient of x^{2k} in sinc x: (−1)^k/(2k+1)!.
pub fn sinc_coeff(k: usize) -> BigRational {
    let r = BigRational::new(BigInt::one(), factorial(2 * k as u64 + 1));
    if k.is_multiple_of(2) {
        r
    } else {
        -r
    }
}

/// Coefficient of x^n in sin x.
pub fn sin_taylor(n: usize) -> BigRational {
    if n.is_multiple_of(2) {
        BigRational::zero()
    } else {
        sinc_coeff(n / 2)
    }
}

/// Coefficient of x^n in cos x.
pub fn cos_taylor(n: usize) -> BigRational {
    if n % 2 == 1 {
        return BigRational::zero();
    }
    let r = BigRational::new(BigInt::one(), factorial(n as u64));
    if (n / 2).is_multiple_of(2) {
        r
    } else {
        -r
    }
}

/// Coefficient of x^{2k−1} in tan x; `tan_coeff(0)` is 0.
pub fn tan_coeff(k: usize) -> BigRational {
    if k == 0 {
        return BigRational::zero();
    }
    let p = pow2(2 * k as u64);
    let num = &p * (&p - BigInt::one());
    BigRational::from_integer(num) * bernoulli_abs(k) / BigRational::from_integer(factorial(2 * k as u64))
}

/// Magnitude 2^{2k}|B_{2k}|/(2k)! subtracted at x^{2k−1} in cot x.
pub fn cot_coeff(k: usize) -> BigRational {
    assert!(k >= 1, "cot_coeff needs k >= 1");
    BigRational::from_integer(pow2(2 * k as u64)) * bernoulli_abs(k)
        / BigRational::from_integer(factorial(2 * k as u64))
}

/// 2^{k+1}/π^{k+1}
fn two_over_pi_pow(n: usize) -> PiExpr {
    PiExpr::monomial(BigRational::from_integer(pow2(n as u64)), -(n as i32))
}

/// Coefficient α_k of x^k in tan x − 4x/(π(π−2x)).
pub fn steckin_alpha(k: usize) -> PiExpr {
    assert!(k >= 1, "steckin_alpha needs k >= 1");
    let geometric = two_over_pi_pow(k + 1);
    if k.is_multiple_of(2) {
        -geometric
    } else {
        &PiExpr::rational(tan_coeff(k.div_ceil(2))) - &geometric
    }
}

/// Coefficient C_k of x^{2k−2} in (π² − 4x²)·tan x / x.
#[allow(non_snake_case)]
pub fn becker_stark_C(k: usize) -> PiExpr {
    assert!(k >= 1, "becker_stark_C needs k >= 1");
    let a = PiExpr::monomial(tan_coeff(k), 2);
    let b = PiExpr::rational(tan_coeff(k - 1) * BigRational::from_integer(big(4)));
    &a - &b
}

/// The α-array of the cot expansion: α₁ = 1, α_{2j} = 0, α_{2j+1} = −cot_coeff(j).
/// Indices below 1 give 0.
pub fn cot_alpha(i: i64) -> BigRational {
    if i < 1 || i % 2 == 0 {
        BigRational::zero()
    } else if i == 1 {
        BigRational::one()
    } else {
        -cot_coeff(((i - 1) / 2) as usize)
    }
}

/// Remainder of m modulo 2.
pub fn r2(m: usize) -> usize {
    m % 2
}

/// Coefficient of t^m in ψ(t), by Cauchy product of
/// (8/π)·t(π − t), Σ (2t/π)^i and Σ α_{2j+1} t^{2j−1}.
pub fn psi_coeff_product(m: usize) -> PiExpr {
    // t·cot t = Σ_j α_{2j+1} t^{2j}
    let tcot: Vec<PiExpr> =
        (0..=m).map(|n| if n % 2 == 0 { PiExpr::rational(cot_alpha(n as i64 + 1)) } else { PiExpr::zero() }).collect();
    let geometric: Vec<PiExpr> = (0..=m).map(two_over_pi_pow).collect();
    // h = geometric * tcot, truncated at degree m
    let h: Vec<PiExpr> = (0..=m)
        .map(|n| {
            let mut acc = PiExpr::zero();
            for j in 0..=n {
                if !tcot[j].is_zero() {
                    acc += &(&tcot[j] * &geometric[n - j]);
                }
            }
            acc
        })
        .collect();
    // (8/π)(π − t)·h = 8h − (8/π)t·h
    let mut out = h[m].scale(&BigRational::from_integer(big(8)));
    if m >= 1 {
        out -= &(&h[m - 1] * &PiExpr::monomial(BigRational::from_integer(big(8)), -1));
    }
    out
}

/// Closed form of the t^m coefficient of ψ from the conjectured identity.
pub fn psi_coeff_conjecture(m: usize) -> PiExpr {
    let r = r2(m);
    let mi = m as i64;
    let ri = r as i64;
    let mut out = PiExpr::monomial(cot_alpha(mi + 1 - ri) * BigRational::from_integer(big(8)), -(r as i32));
    for i in 1..=(m / 2) {
        let a = cot_alpha(mi + 1 - 2 * i as i64 - ri);
        if a.is_zero() {
            continue;
        }
        let c = a * BigRational::from_integer(pow2((2 * i + 2 + r) as u64));
        out += &PiExpr::monomial(c, -((2 * i + r) as i32));
    }
    out
}

/// Power-series coefficients of sinc x up to degree `n` (dense, in x).
pub fn sinc_poly(n: usize) -> PiPoly {
    PiPoly::new(
        (0..=n).map(|d| if d % 2 == 0 { PiExpr::rational(sinc_coeff(d / 2)) } else { PiExpr::zero() }).collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesId {
    Sinc,
    Tan,
    Cot,
    SteckinAlpha,
    #[serde(rename = "becker_stark_C")]
    BeckerStarkC,
    PsiProduct,
    PsiConjecture,
}

impl SeriesId {
    pub const ALL: [SeriesId; 7] = [
        SeriesId::Sinc,
        SeriesId::Tan,
        SeriesId::Cot,
        SeriesId::SteckinAlpha,
        SeriesId::BeckerStarkC,
        SeriesId::PsiProduct,
        SeriesId::PsiConjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::Sinc => "sinc",
            SeriesId::Tan => "tan",
            SeriesId::Cot => "cot",
            SeriesId::SteckinAlpha => "steckin_alpha",
            SeriesId::BeckerStarkC => "becker_stark_C",
            SeriesId::PsiProduct => "psi_product",
            SeriesId::PsiConjecture => "psi_conjecture",
        }
    }

    /// Smallest valid index.
    pub fn first_index(self) -> usize {
        match self {
            SeriesId::Sinc | SeriesId::PsiProduct | SeriesId::PsiConjecture => 0,
            _ => 1,
        }
    }

    pub fn coeff(self, k: usize) -> PiExpr {
        match self {
            SeriesId::Sinc => PiExpr::rational(sinc_coeff(k)),
            SeriesId::Tan => PiExpr::rational(tan_coeff(k)),
            SeriesId::Cot => PiExpr::rational(cot_coeff(k)),
            SeriesId::SteckinAlpha => steckin_alpha(k),
            SeriesId::BeckerStarkC => becker_stark_C(k),
            SeriesId::PsiProduct => psi_coeff_product(k),
            SeriesId::PsiConjecture => psi_coeff_conjecture(k),
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let id = match s {
            "psi" => SeriesId::PsiProduct,
            "alpha" => SeriesId::SteckinAlpha,
            "C" => SeriesId::BeckerStarkC,
            _ => *SeriesId::ALL.iter().find(|id| id.name() == s).ok_or_else(|| format!("unknown series id '{s}'"))?,
        };
        Ok(id)
    }
}

/// Lazily materialized coefficient sequence.
#[derive(Debug, Clone)]
pub struct CoeffStream {
    pub series_id: SeriesId,
    cursor: usize,
    cache: Vec<PiExpr>,
}

impl CoeffStream {
    pub fn new(series_id: SeriesId) -> Self {
        CoeffStream { series_id, cursor: series_id.first_index(), cache: Vec::new() }
    }

    /// Coefficient at index `k`; panics below `first_index`.
    pub fn get(&mut self, k: usize) -> PiExpr {
        let first = self.series_id.first_index();
        assert!(k >= first, "{} starts at index {first}", self.series_id);
        while self.cache.len() <= k - first {
            let idx = first + self.cache.len();
            self.cache.push(self.series_id.coeff(idx));
        }
        self.cache[k - first].clone()
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }
}

impl Iterator for CoeffStream {
    type Item = (usize, PiExpr);
    fn next(&mut self) -> Option<Self::Item> {
        let k = self.cursor;
        self.cursor += 1;
        Some((k, self.get(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Sign};

    fn c(s: &str) -> PiExpr {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    /// Akiyama–Tanigawa algorithm; yields B_n with B_1 = +1/2.
    fn bernoulli_oracle(n: usize) -> BigRational {
        let mut a: Vec<BigRational> = Vec::new();
        for m in 0..=n {
            a.push(r(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = (&a[j - 1] - &a[j]) * BigRational::from_integer(big(j as u64));
            }
        }
        a[0].clone()
    }

    /// Formal power-series quotient num/den, den[0] != 0.
    fn series_div(num: &[BigRational], den: &[BigRational], n: usize) -> Vec<BigRational> {
        let mut q: Vec<BigRational> = Vec::new();
        for k in 0..=n {
            let mut acc = num.get(k).cloned().unwrap_or_else(BigRational::zero);
            for (j, qj) in q.iter().enumerate() {
                if let Some(d) = den.get(k - j) {
                    acc -= qj * d;
                }
            }
            q.push(acc / &den[0]);
        }
        q
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        assert_eq!(bernoulli_abs(1), r(1, 6));
        assert_eq!(bernoulli_abs(2), r(1, 30));
        assert_eq!(bernoulli_abs(3), r(1, 42));
        for k in 1..=30 {
            assert_eq!(bernoulli(2 * k), bernoulli_oracle(2 * k), "B_{}", 2 * k);
            assert!(bernoulli(2 * k + 1).is_zero());
        }
        assert_eq!(bernoulli(1), r(-1, 2));
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc_coeff(0), r(1, 1));
        assert_eq!(sinc_coeff(1), r(-1, 6));
        assert_eq!(sinc_coeff(2), r(1, 120));
        assert_eq!(sinc_coeff(3), r(-1, 5040));
    }

    #[test]
    fn tan_matches_derivative_polynomial_oracle() {
        // tan^{(n)} = P_n(tan), P_{n+1} = P_n' (1 + t^2), P_0 = t
        let mut p: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
        let mut coeffs = vec![BigRational::zero()];
        for n in 1..=41u64 {
            let mut d: Vec<BigInt> = (1..p.len()).map(|i| &p[i] * big(i as u64)).collect();
            let mut next = vec![BigInt::zero(); d.len() + 2];
            for (i, v) in d.drain(..).enumerate() {
                next[i] += &v;
                next[i + 2] += &v;
            }
            p = next;
            coeffs.push(BigRational::new(p[0].clone(), factorial(n)));
        }
        assert_eq!(tan_coeff(1), r(1, 1));
        assert_eq!(tan_coeff(2), r(1, 3));
        assert_eq!(tan_coeff(3), r(2, 15));
        for k in 1..=20 {
            assert_eq!(tan_coeff(k), coeffs[2 * k - 1], "k = {k}");
        }
    }

    #[test]
    fn tan_and_cot_match_series_division() {
        let n = 42;
        let sin: Vec<BigRational> = (0..=n + 1).map(sin_taylor).collect();
        let cos: Vec<BigRational> = (0..=n + 1).map(cos_taylor).collect();
        let tan = series_div(&sin, &cos, n);
        // t·cot t = cos t / sinc t
        let sinc: Vec<BigRational> = (0..=n).map(|k| sin_taylor(k + 1)).collect();
        let tcot = series_div(&cos, &sinc, n);
        for k in 1..=20 {
            assert_eq!(tan_coeff(k), tan[2 * k - 1], "tan k = {k}");
            assert_eq!(cot_coeff(k), -tcot[2 * k].clone(), "cot k = {k}");
        }
        assert_eq!(cot_coeff(1), r(1, 3));
        assert_eq!(cot_coeff(2), r(1, 45));
        assert_eq!(cot_coeff(3), r(2, 945));
    }

    #[test]
    fn steckin_alpha_values() {
        assert_eq!(steckin_alpha(1), c("1 - 4/pi^2"));
        assert_eq!(steckin_alpha(2), c("-8/pi^3"));
        assert_eq!(steckin_alpha(3), c("1/3 - 16/pi^4"));
    }

    #[test]
    fn steckin_alpha_matches_expansion_of_f() {
        // f = tan x − (4/π²)·x/(1 − 2x/π); compare with direct series sum
        for k in 1..=15usize {
            let tan_part = if k % 2 == 1 { PiExpr::rational(tan_coeff(k.div_ceil(2))) } else { PiExpr::zero() };
            let geo = PiExpr::monomial(r(4, 1), -2)
                * PiExpr::monomial(BigRational::from_integer(pow2(k as u64 - 1)), -(k as i32 - 1));
            assert_eq!(steckin_alpha(k), &tan_part - &geo, "k = {k}");
        }
    }

    #[test]
    fn becker_stark_values_and_product_oracle() {
        assert_eq!(becker_stark_C(1), c("pi^2"));
        assert_eq!(becker_stark_C(2), c("pi^2/3 - 4"));
        assert_eq!(becker_stark_C(3), c("2/15*pi^2 - 4/3"));
        // (π² − 4x²)·(tan x / x), tan x / x = Σ tan_coeff(k) x^{2k−2}
        let tx = PiPoly::new(
            (0..=20)
                .map(|d| if d % 2 == 0 { PiExpr::rational(tan_coeff(d / 2 + 1)) } else { PiExpr::zero() })
                .collect(),
        );
        let pre = PiPoly::new(vec![c("pi^2"), PiExpr::zero(), c("-4")]);
        let prod = &pre * &tx;
        for k in 1..=10 {
            assert_eq!(becker_stark_C(k), prod.coeff(2 * k - 2), "k = {k}");
        }
    }

    #[test]
    fn psi_leading_coefficients() {
        let printed = [
            "8",
            "8/pi",
            "16/pi^2 - 8/3",
            "32/pi^3 - 8/(3*pi)",
            "64/pi^4 - 16/(3*pi^2) - 8/45",
            "128/pi^5 - 32/(3*pi^3) - 8/(45*pi)",
        ];
        for (m, s) in printed.iter().enumerate() {
            assert_eq!(psi_coeff_product(m), c(s), "product m = {m}");
            assert_eq!(psi_coeff_conjecture(m), c(s), "closed form m = {m}");
        }
    }

    #[test]
    fn conjecture_identity_to_order_40() {
        for m in 0..=40 {
            assert_eq!(psi_coeff_product(m), psi_coeff_conjecture(m), "m = {m}");
        }
    }

    #[test]
    fn alpha_sign_pattern() {
        for k in 1..=60 {
            let expect = if k % 2 == 0 { Sign::Negative } else { Sign::Positive };
            assert_eq!(steckin_alpha(k).sign(), expect, "k = {k}");
        }
    }

    #[test]
    fn stream_replays_identically() {
        let mut s = CoeffStream::new(SeriesId::PsiProduct);
        let first: Vec<_> = s.by_ref().take(6).collect();
        assert_eq!(s.cursor(), 6);
        let mut t = CoeffStream::new(SeriesId::PsiProduct);
        for (k, v) in &first {
            assert_eq!(&t.get(*k), v);
        }
        assert_eq!(s.get(2), first[2].1);
        assert_eq!("psi".parse::<SeriesId>().unwrap(), SeriesId::PsiProduct);
        assert!("nope".parse::<SeriesId>().is_err());
    }
}
