//! One-sided polynomial approximants: Taylor truncations with a certified
//! side, two-point (Wu–Debnath) bounds, and partial sums of the series
//! expansions of the target functions.

pub mod catalog;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{parse_laurent, Interval, PiExpr, PiPoly};
use crate::prover::enclose::enclose;
use crate::series::{becker_stark_C, cot_coeff, psi_coeff_product, sinc_coeff, steckin_alpha, tan_coeff, SeriesId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("endpoint data unavailable: {0}")]
    EndpointData(String),
    #[error("{0}")]
    Parse(String),
}

/// Coordinate of a bound: `x`, or `t = π/2 − x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    T,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::T => 't',
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::X => Var::T,
            Var::T => Var::X,
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            't' => Some(Var::T),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Lower => 'L',
            Side::Upper => 'U',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

/// The target functions. `cot` and `psi` live naturally in `t`, the others in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionId {
    Sinc,
    Tan,
    Cot,
    SteckinF,
    BeckerStarkPhi,
    Psi,
}

impl FunctionId {
    pub const ALL: [FunctionId; 6] = [
        FunctionId::Sinc,
        FunctionId::Tan,
        FunctionId::Cot,
        FunctionId::SteckinF,
        FunctionId::BeckerStarkPhi,
        FunctionId::Psi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::Sinc => "sinc",
            FunctionId::Tan => "tan",
            FunctionId::Cot => "cot",
            FunctionId::SteckinF => "steckin_f",
            FunctionId::BeckerStarkPhi => "becker_stark_phi",
            FunctionId::Psi => "psi",
        }
    }

    /// Short name used inside bound names such as `T4U(phi)`.
    pub fn short(self) -> &'static str {
        match self {
            FunctionId::SteckinF => "f",
            FunctionId::BeckerStarkPhi => "phi",
            other => other.name(),
        }
    }

    pub fn natural_var(self) -> Var {
        match self {
            FunctionId::Cot | FunctionId::Psi => Var::T,
            _ => Var::X,
        }
    }

    pub fn definition(self) -> &'static str {
        match self {
            FunctionId::Sinc => "sin(x)/x",
            FunctionId::Tan => "tan(x)",
            FunctionId::Cot => "cot(t)",
            FunctionId::SteckinF => "tan(x) - 4x/(pi(pi - 2x))",
            FunctionId::BeckerStarkPhi => "(pi^2 - 4x^2) tan(x)/x",
            FunctionId::Psi => "8t(pi - t) cot(t)/(pi - 2t)",
        }
    }

    /// The open interval (in the natural variable) on which the function is handled.
    pub fn domain(self) -> Domain {
        match self {
            FunctionId::Sinc => Domain::new(PiExpr::zero(), PiExpr::ratio(433, 125)),
            _ => Domain::new(PiExpr::zero(), PiExpr::half_pi()),
        }
    }

    /// Exact value (one-sided limit) at π/2 of the natural variable, when known.
    pub fn value_at_half_pi(self) -> Option<PiExpr> {
        match self {
            FunctionId::Sinc | FunctionId::SteckinF => Some(PiExpr::monomial(crate::exact::rat(2, 1), -1)),
            FunctionId::Cot => Some(PiExpr::zero()),
            FunctionId::BeckerStarkPhi => Some(PiExpr::int(8)),
            FunctionId::Psi => Some(PiExpr::pi_pow(2)),
            FunctionId::Tan => None,
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = ApproxError;
    fn from_str(s: &str) -> Result<Self, ApproxError> {
        Ok(match s {
            "sinc" => FunctionId::Sinc,
            "tan" => FunctionId::Tan,
            "cot" => FunctionId::Cot,
            "steckin_f" | "f" => FunctionId::SteckinF,
            "becker_stark_phi" | "phi" => FunctionId::BeckerStarkPhi,
            "psi" => FunctionId::Psi,
            _ => return Err(ApproxError::Parse(format!("unknown function '{s}'"))),
        })
    }
}

/// A target function together with its definition metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FunctionSpec {
    pub id: FunctionId,
}

impl FunctionSpec {
    pub fn new(id: FunctionId) -> Self {
        FunctionSpec { id }
    }

    pub fn natural_var(&self) -> Var {
        self.id.natural_var()
    }

    pub fn definition(&self) -> &'static str {
        self.id.definition()
    }
}

impl From<FunctionId> for FunctionSpec {
    fn from(id: FunctionId) -> Self {
        FunctionSpec { id }
    }
}

/// Open interval with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    pub lo: PiExpr,
    pub hi: PiExpr,
}

impl Domain {
    pub fn new(lo: PiExpr, hi: PiExpr) -> Self {
        Domain { lo, hi }
    }

    /// The same set of points written in the other coordinate.
    pub fn reflect(&self) -> Domain {
        let h = PiExpr::half_pi();
        Domain::new(&h - &self.hi, &h - &self.lo)
    }

    pub fn enclose(&self) -> Interval {
        Interval::new(self.lo.enclose().lo, self.hi.enclose().hi)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `value · v^degree` where `value` is only known as an enclosure, pinned by
/// the requirement that the bound meets `function` at `anchor` (in the
/// bound's own coordinate).
#[derive(Debug, Clone, PartialEq)]
pub struct TranscendentalTerm {
    pub degree: usize,
    pub value: Interval,
    pub anchor: PiExpr,
    pub function: FunctionId,
}

/// `principal/v + poly(v) + extra`, in coordinate `var`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    pub var: Var,
    pub principal: Option<PiExpr>,
    pub poly: PiPoly,
    pub extra: Option<TranscendentalTerm>,
}

impl LaurentPoly {
    pub fn new(var: Var, principal: Option<PiExpr>, poly: PiPoly) -> Self {
        LaurentPoly { var, principal: principal.filter(|p| !p.is_zero()), poly, extra: None }
    }

    pub fn poly(var: Var, poly: PiPoly) -> Self {
        Self::new(var, None, poly)
    }

    pub fn zero(var: Var) -> Self {
        Self::poly(var, PiPoly::zero())
    }

    /// Parses an inline expression such as `2/pi - t/3` or `1/t - t/3`.
    pub fn parse(s: &str, default_var: Var) -> Result<LaurentPoly, ApproxError> {
        let l = parse_laurent(s, None).map_err(|e| ApproxError::Parse(e.msg))?;
        let var = l.var.and_then(Var::from_symbol).unwrap_or(default_var);
        if l.min_power() < -1 {
            return Err(ApproxError::Parse(format!("'{s}': only a 1/{var} principal term is supported")));
        }
        let deg = l.max_power().max(0) as usize;
        let mut coeffs = vec![PiExpr::zero(); deg + 1];
        let mut principal = None;
        for (k, c) in l.terms {
            if k < 0 {
                principal = Some(c);
            } else {
                coeffs[k as usize] = c;
            }
        }
        Ok(LaurentPoly::new(var, principal, PiPoly::new(coeffs)))
    }

    pub fn is_polynomial(&self) -> bool {
        self.principal.is_none() && self.extra.is_none()
    }

    pub fn degree(&self) -> usize {
        let d = self.poly.degree();
        self.extra.as_ref().map_or(d, |e| d.max(e.degree))
    }

    /// Enclosure of the value for all `v` in the interval.
    pub fn eval(&self, v: Interval) -> Interval {
        let mut out = self.poly.eval(v);
        if let Some(p) = &self.principal {
            out = out + p.enclose() / v;
        }
        if let Some(e) = &self.extra {
            out = out + e.value * v.powi(e.degree as u32);
        }
        out
    }

    /// Exact value at an exact point; `None` when a transcendental term is present.
    pub fn eval_exact(&self, v: &PiExpr) -> Option<PiExpr> {
        if self.extra.is_some() {
            return None;
        }
        let mut out = self.poly.eval_exact(v);
        if let Some(p) = &self.principal {
            out = &out + &(p * &v.recip()?);
        }
        Some(out)
    }

    /// Rewrites the bound in the other coordinate via `v ↦ π/2 − v`.
    pub fn reexpress(&self, target: Var) -> Result<LaurentPoly, ApproxError> {
        if target == self.var {
            return Ok(self.clone());
        }
        if self.principal.is_some() {
            return Err(ApproxError::Unsupported(
                "a principal term has no polynomial form in the other coordinate".into(),
            ));
        }
        if self.extra.is_some() {
            return Err(ApproxError::Unsupported("a transcendental term cannot be re-expressed exactly".into()));
        }
        let h = PiExpr::half_pi();
        Ok(LaurentPoly::poly(target, self.poly.compose_affine(&h, &PiExpr::int(-1))))
    }

    fn combine(&self, rhs: &LaurentPoly, negate: bool) -> Result<LaurentPoly, ApproxError> {
        let rhs = rhs.reexpress(self.var)?;
        let sign = |c: &PiExpr| if negate { -c } else { c.clone() };
        let principal = match (&self.principal, &rhs.principal) {
            (Some(a), Some(b)) => Some(a + &sign(b)),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(sign(b)),
            (None, None) => None,
        };
        let poly = if negate { &self.poly - &rhs.poly } else { &self.poly + &rhs.poly };
        let extra = match (&self.extra, &rhs.extra) {
            (Some(_), Some(_)) => {
                return Err(ApproxError::Unsupported("two transcendental terms cannot be combined".into()))
            }
            (Some(e), None) => Some(e.clone()),
            (None, Some(e)) => Some(TranscendentalTerm { value: if negate { -e.value } else { e.value }, ..e.clone() }),
            (None, None) => None,
        };
        let mut out = LaurentPoly::new(self.var, principal, poly);
        out.extra = extra;
        Ok(out)
    }

    pub fn add(&self, rhs: &LaurentPoly) -> Result<LaurentPoly, ApproxError> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> Result<LaurentPoly, ApproxError> {
        self.combine(rhs, true)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::exact::pipoly::fmt_poly(f, self.principal.as_ref(), self.poly.coeffs(), self.var.symbol())?;
        if let Some(e) = &self.extra {
            let v = self.var.symbol();
            write!(f, " + [{:.15e}]*{v}^{}", e.value.mid(), e.degree)?;
        }
        Ok(())
    }
}

/// A bound of `target`, claimed to hold on `domain` (in `body.var`).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundPoly {
    pub name: String,
    pub target: FunctionId,
    pub side: Side,
    pub domain: Domain,
    pub body: LaurentPoly,
}

impl BoundPoly {
    pub fn var(&self) -> Var {
        self.body.var
    }

    pub fn degree(&self) -> usize {
        self.body.degree()
    }

    pub fn coeff(&self, k: usize) -> PiExpr {
        self.body.poly.coeff(k)
    }

    /// The bound rewritten in `var`, domain included.
    pub fn in_var(&self, var: Var) -> Result<BoundPoly, ApproxError> {
        if var == self.var() {
            return Ok(self.clone());
        }
        Ok(BoundPoly { body: self.body.reexpress(var)?, domain: self.domain.reflect(), ..self.clone() })
    }

    pub fn eval(&self, v: Interval) -> Interval {
        self.body.eval(v)
    }
}

impl fmt::Display for BoundPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{} of {} on {} {}]: {}", self.name, self.side, self.target, self.var(), self.domain, self.body)
    }
}

impl Serialize for BoundPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BoundPoly", 6)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("side", &self.side)?;
        st.serialize_field("var", &self.var())?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("expr", &self.body.to_string())?;
        st.end()
    }
}

/// Exact power-series data of `id` at 0 of its natural variable:
/// the `1/v` coefficient (if any) and the coefficients of degree `0..=deg`.
pub fn series_at_zero(id: FunctionId, deg: usize) -> (Option<PiExpr>, Vec<PiExpr>) {
    let odd = |k: usize, f: &dyn Fn(usize) -> PiExpr| {
        if k % 2 == 1 {
            f(k.div_ceil(2))
        } else {
            PiExpr::zero()
        }
    };
    let coeffs = (0..=deg)
        .map(|k| match id {
            FunctionId::Sinc => {
                if k % 2 == 0 {
                    PiExpr::rational(sinc_coeff(k / 2))
                } else {
                    PiExpr::zero()
                }
            }
            FunctionId::Tan => odd(k, &|j| PiExpr::rational(tan_coeff(j))),
            FunctionId::Cot => odd(k, &|j| -PiExpr::rational(cot_coeff(j))),
            FunctionId::SteckinF => {
                if k == 0 {
                    PiExpr::zero()
                } else {
                    steckin_alpha(k)
                }
            }
            FunctionId::BeckerStarkPhi => {
                if k % 2 == 0 {
                    becker_stark_C(k / 2 + 1)
                } else {
                    PiExpr::zero()
                }
            }
            FunctionId::Psi => psi_coeff_product(k),
        })
        .collect();
    let principal = (id == FunctionId::Cot).then(PiExpr::one);
    (principal, coeffs)
}

fn taylor_body(id: FunctionId, deg: usize) -> LaurentPoly {
    let (principal, coeffs) = series_at_zero(id, deg);
    LaurentPoly::new(id.natural_var(), principal, PiPoly::new(coeffs))
}

/// Taylor truncation at 0 of degree `n` with its certified side.
pub fn taylor_bound(spec: impl Into<FunctionSpec>, n: usize) -> Result<BoundPoly, ApproxError> {
    let id = spec.into().id;
    let (side, domain) = match id {
        FunctionId::Sinc => {
            if n % 2 == 1 {
                return Err(ApproxError::Unsupported(format!("sinc truncations have even degree, got {n}")));
            }
            let side = if n.is_multiple_of(4) { Side::Upper } else { Side::Lower };
            (side, id.domain())
        }
        FunctionId::Tan => {
            if n == 0 {
                return Err(ApproxError::Unsupported("tan truncation of degree 0".into()));
            }
            (Side::Lower, id.domain())
        }
        FunctionId::Cot => (Side::Upper, id.domain()),
        other => {
            return Err(ApproxError::Unsupported(format!("Taylor bounds are built for sinc, tan and cot, not {other}")))
        }
    };
    Ok(BoundPoly {
        name: format!("T{n}{}({})", side.letter(), id.short()),
        target: id,
        side,
        domain,
        body: taylor_body(id, n),
    })
}

/// Degree of the free top coefficient of the two-point bound of order `n`.
fn wd_top_degree(id: FunctionId, n: usize) -> usize {
    match id {
        FunctionId::BeckerStarkPhi => 2 * n - 2,
        _ => n,
    }
}

/// Two-point lower bound: the Taylor data of `fn` at `a = 0` up to the
/// degree below the top, plus a top coefficient chosen so that the bound
/// meets `fn` at `b`. For `becker_stark_phi`, `n` counts even terms and the
/// top degree is `2n − 2`.
pub fn wd_lower_two_point(
    spec: impl Into<FunctionSpec>,
    n: usize,
    a: &PiExpr,
    b: &PiExpr,
) -> Result<BoundPoly, ApproxError> {
    let id = spec.into().id;
    if n == 0 || (id == FunctionId::BeckerStarkPhi && n < 2) {
        return Err(ApproxError::Unsupported(format!("order {n} for {id}")));
    }
    if !a.is_zero() {
        return Err(ApproxError::EndpointData(format!("derivative data for {id} is available only at 0, got a = {a}")));
    }
    let dom = id.domain();
    if b.cmp_value(&PiExpr::zero()).is_le() || b.cmp_value(&dom.hi).is_gt() {
        return Err(ApproxError::EndpointData(format!("b = {b} lies outside {dom} for {id}")));
    }
    let top = wd_top_degree(id, n);
    let base = taylor_body(id, top - 1);
    let b_pow = b.pow(top as u32);
    let exact_fb = if b == &PiExpr::half_pi() { id.value_at_half_pi() } else { None };
    let mut body = base.clone();
    match exact_fb {
        Some(fb) => {
            let tb = base.eval_exact(b).expect("base is exact");
            let kappa = &(&fb - &tb) * &b_pow.recip().expect("b is nonzero");
            body.poly = &base.poly + &PiPoly::monomial(kappa, top);
        }
        None => {
            if id == FunctionId::Tan && b == &PiExpr::half_pi() {
                return Err(ApproxError::EndpointData("tan has a pole at pi/2".into()));
            }
            let bi = b.enclose();
            let fb = enclose(id, bi).map_err(|e| ApproxError::EndpointData(e.to_string()))?;
            let value = (fb - base.eval(bi)) / bi.powi(top as u32);
            body.extra = Some(TranscendentalTerm { degree: top, value, anchor: b.clone(), function: id });
        }
    }
    Ok(BoundPoly {
        name: format!("WD{n}({};{a},{b})", id.short()),
        target: id,
        side: Side::Lower,
        domain: Domain::new(a.clone(), b.clone()),
        body,
    })
}

/// The pair of bounds of the Stečkin remainder in `t = π/2 − x`, obtained
/// from the cot bounds by subtracting `1/t` and adding `2/π`.
pub fn steckin_bounds(n: usize) -> Result<(BoundPoly, BoundPoly), ApproxError> {
    if n == 0 {
        return Err(ApproxError::Unsupported("order 0".into()));
    }
    let shift = LaurentPoly::new(
        Var::T,
        Some(PiExpr::int(-1)),
        PiPoly::constant(PiExpr::monomial(crate::exact::rat(2, 1), -1)),
    );
    let upper_cot = taylor_bound(FunctionId::Cot, n)?;
    let lower_cot = wd_lower_two_point(FunctionId::Cot, n, &PiExpr::zero(), &PiExpr::half_pi())?;
    let domain = Domain::new(PiExpr::zero(), PiExpr::half_pi());
    let upper = BoundPoly {
        name: format!("F{n}U"),
        target: FunctionId::SteckinF,
        side: Side::Upper,
        domain: domain.clone(),
        body: upper_cot.body.add(&shift)?,
    };
    let lower = BoundPoly {
        name: format!("F{n}L"),
        target: FunctionId::SteckinF,
        side: Side::Lower,
        domain,
        body: lower_cot.body.add(&shift)?,
    };
    debug_assert!(upper.body.principal.is_none() && lower.body.principal.is_none());
    Ok((lower, upper))
}

/// Partial sums of a series with the side the corresponding result assigns.
///
/// * `steckin_alpha`: `Σ_{k≤2ℓ} α_k x^k` below and `Σ_{k≤2ℓ−1}` above, on (0, 1).
/// * `becker_stark_C`: `Σ_{k=1}^{ℓ} C_k x^{2k−2}` above, no lower bound.
/// * `psi_*`: degree `2ℓ` below and `2ℓ+1` above, in `t`.
/// * `sinc`: degrees `4ℓ−2` and `4ℓ`; `tan` and `cot` give one side only.
pub fn partial_sum_bounds(series: SeriesId, l: usize) -> Result<(Option<BoundPoly>, Option<BoundPoly>), ApproxError> {
    if l == 0 {
        return Err(ApproxError::Unsupported("order 0".into()));
    }
    let half = || Domain::new(PiExpr::zero(), PiExpr::half_pi());
    let mk = |id: FunctionId, idx: usize, side: Side, domain: Domain, deg: usize| BoundPoly {
        name: format!("T{idx}{}({})", side.letter(), id.short()),
        target: id,
        side,
        domain,
        body: taylor_body(id, deg),
    };
    Ok(match series {
        SeriesId::SteckinAlpha => {
            let d = Domain::new(PiExpr::zero(), PiExpr::one());
            let id = FunctionId::SteckinF;
            (Some(mk(id, 2 * l, Side::Lower, d.clone(), 2 * l)), Some(mk(id, 2 * l - 1, Side::Upper, d, 2 * l - 1)))
        }
        SeriesId::BeckerStarkC => (None, Some(mk(FunctionId::BeckerStarkPhi, l, Side::Upper, half(), 2 * l - 2))),
        SeriesId::PsiProduct | SeriesId::PsiConjecture => {
            let id = FunctionId::Psi;
            (Some(mk(id, 2 * l, Side::Lower, half(), 2 * l)), Some(mk(id, 2 * l + 1, Side::Upper, half(), 2 * l + 1)))
        }
        SeriesId::Sinc => {
            (Some(taylor_bound(FunctionId::Sinc, 4 * l - 2)?), Some(taylor_bound(FunctionId::Sinc, 4 * l)?))
        }
        SeriesId::Tan => (Some(taylor_bound(FunctionId::Tan, 2 * l - 1)?), None),
        SeriesId::Cot => (None, Some(taylor_bound(FunctionId::Cot, 2 * l - 1)?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_constant, Sign};

    fn c(s: &str) -> PiExpr {
        parse_constant(s).unwrap()
    }

    fn lp(s: &str, v: Var) -> LaurentPoly {
        LaurentPoly::parse(s, v).unwrap()
    }

    #[test]
    fn sinc_truncations() {
        let t4 = taylor_bound(FunctionId::Sinc, 4).unwrap();
        assert_eq!(t4.side, Side::Upper);
        assert_eq!(t4.body, lp("1 - x^2/6 + x^4/120", Var::X));
        let t0 = taylor_bound(FunctionId::Sinc, 0).unwrap();
        assert_eq!((t0.side, t0.body.poly.clone()), (Side::Upper, PiPoly::constant(c("1"))));
        assert_eq!(taylor_bound(FunctionId::Sinc, 6).unwrap().side, Side::Lower);
        assert!(taylor_bound(FunctionId::Sinc, 3).is_err());
        assert!(taylor_bound(FunctionId::Psi, 2).is_err());
    }

    #[test]
    fn cot_truncation_has_principal_term() {
        let b = taylor_bound(FunctionId::Cot, 3).unwrap();
        assert_eq!(b.side, Side::Upper);
        assert_eq!(b.var(), Var::T);
        assert_eq!(b.body, lp("1/t - t/3 - t^3/45", Var::T));
    }

    #[test]
    fn two_point_cot_bounds() {
        let z = PiExpr::zero();
        let h = PiExpr::half_pi();
        let w1 = wd_lower_two_point(FunctionId::Cot, 1, &z, &h).unwrap();
        assert_eq!(w1.body, lp("1/t - 4/pi^2*t", Var::T));
        let w3 = wd_lower_two_point(FunctionId::Cot, 3, &z, &h).unwrap();
        let k = &c("(2/pi)^3") * &c("2/pi - pi/6");
        assert_eq!(w3.body, lp("1/t - t/3", Var::T).sub(&LaurentPoly::poly(Var::T, PiPoly::monomial(k, 3))).unwrap());
    }

    #[test]
    fn two_point_phi_bound_at_one() {
        let w = wd_lower_two_point(FunctionId::BeckerStarkPhi, 2, &PiExpr::zero(), &PiExpr::one()).unwrap();
        assert_eq!(w.body.poly, PiPoly::constant(c("pi^2")));
        let e = w.body.extra.as_ref().unwrap();
        assert_eq!(e.degree, 2);
        // φ(1) = (π² − 4)·tan 1 = 9.14136...
        let phi1 = 9.141_367_234_924_978;
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((e.value.mid() - (phi1 - pi2)).abs() < 1e-12);
        assert!(e.value.width() < 1e-13);
    }

    #[test]
    fn interpolation_property() {
        // derivatives at 0 agree with the series below the top degree; value at b agrees
        let h = PiExpr::half_pi();
        for n in 1..=7 {
            let w = wd_lower_two_point(FunctionId::Cot, n, &PiExpr::zero(), &h).unwrap();
            let (_, s) = series_at_zero(FunctionId::Cot, n);
            for (k, sk) in s.iter().enumerate().take(n) {
                assert_eq!(&w.body.poly.coeff(k), sk);
            }
            assert_eq!(w.body.principal, Some(PiExpr::one()));
            assert_eq!(w.body.eval_exact(&h).unwrap(), PiExpr::zero());
        }
        for n in 2..=5 {
            let w = wd_lower_two_point(FunctionId::BeckerStarkPhi, n, &PiExpr::zero(), &h).unwrap();
            assert_eq!(w.body.eval_exact(&h).unwrap(), PiExpr::int(8));
        }
    }

    #[test]
    fn steckin_pairs() {
        let (l1, u1) = steckin_bounds(1).unwrap();
        assert_eq!(u1.body, lp("2/pi - t/3", Var::T));
        assert_eq!(l1.body, lp("2/pi - 4/pi^2*t", Var::T));
        let (l3, u3) = steckin_bounds(3).unwrap();
        assert_eq!(u3.body, lp("2/pi - t/3 - t^3/45", Var::T));
        assert_eq!(l3.body.poly.coeff(3), -&(&c("(2/pi)^3") * &c("2/pi - pi/6")));
        assert_eq!(l3.side, Side::Lower);
    }

    #[test]
    fn partial_sums() {
        let (l, u) = partial_sum_bounds(SeriesId::SteckinAlpha, 1).unwrap();
        assert_eq!(l.unwrap().body, lp("(1 - 4/pi^2)*x - 8/pi^3*x^2", Var::X));
        assert_eq!(u.unwrap().body, lp("(1 - 4/pi^2)*x", Var::X));
        let (none, u) = partial_sum_bounds(SeriesId::BeckerStarkC, 3).unwrap();
        assert!(none.is_none());
        assert_eq!(u.unwrap().body, lp("pi^2 + (pi^2/3 - 4)*x^2 + (2/15*pi^2 - 4/3)*x^4", Var::X));
        let (l, u) = partial_sum_bounds(SeriesId::PsiProduct, 2).unwrap();
        let (l, u) = (l.unwrap(), u.unwrap());
        assert_eq!((l.degree(), u.degree()), (4, 5));
        assert_eq!(u.coeff(5), c("128/pi^5 - 32/(3*pi^3) - 8/(45*pi)"));
        assert_eq!(l.coeff(2), c("16/pi^2 - 8/3"));
    }

    #[test]
    fn reexpression_is_exact() {
        let (_, u) = steckin_bounds(3).unwrap();
        let ux = u.in_var(Var::X).unwrap();
        for s in ["0", "1/3", "pi/5", "7/5"] {
            let x = c(s);
            let t = &PiExpr::half_pi() - &x;
            assert_eq!(ux.body.eval_exact(&x), u.body.eval_exact(&t));
        }
        assert_eq!(ux.in_var(Var::T).unwrap().body, u.body);
        assert!(taylor_bound(FunctionId::Cot, 1).unwrap().in_var(Var::X).is_err());
    }

    #[test]
    fn sinc_chain_is_monotone_on_grid() {
        let lows: Vec<_> = [2, 6, 10, 14].iter().map(|&n| taylor_bound(FunctionId::Sinc, n).unwrap()).collect();
        let ups: Vec<_> = [0, 4, 8, 12].iter().map(|&n| taylor_bound(FunctionId::Sinc, n).unwrap()).collect();
        for i in 1..200 {
            let x = PiExpr::ratio(i, 128); // up to 1.55 < π/2
            let lv: Vec<_> = lows.iter().map(|b| b.body.eval_exact(&x).unwrap()).collect();
            let uv: Vec<_> = ups.iter().map(|b| b.body.eval_exact(&x).unwrap()).collect();
            for w in lv.windows(2) {
                assert_eq!((&w[1] - &w[0]).sign(), Sign::Positive);
            }
            for w in uv.windows(2) {
                assert_eq!((&w[0] - &w[1]).sign(), Sign::Positive);
            }
        }
    }
}
