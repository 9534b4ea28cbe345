//! Certified decision of strict inequalities `lhs < rhs` on open intervals.
//!
//! Every claim is compiled to functions of `x`. Near each endpoint the
//! difference `rhs − lhs` is expanded as a Taylor model whose low-order
//! coefficients are replaced by exact π-Laurent values where available; the
//! first nonzero coefficient decides the one-sided behaviour and a ladder of
//! radii `δ` finds a neighbourhood on which the model stays positive. The
//! remaining closed middle part is covered by adaptive bisection with
//! interval enclosures, falling back to centred Taylor models on short leaves.

pub mod enclose;
pub mod mixed;
pub mod taylor;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::approx::{catalog, ApproxError, BoundPoly, FunctionId, FunctionSpec, LaurentPoly, Var};
use crate::exact::interval::horner;
use crate::exact::pi::half_pi;
use crate::exact::{Interval, PiExpr, PiPoly, Sign};

use enclose::{enclose_kernel, Kernel};
use taylor::{kernel_series0, kernel_tm0, kernel_tm_at, power_tm, shift_poly, Tm};

pub use mixed::{becker_stark_mixed, mixed_trig_sign, ClaimedSign, MixedTerm, MixedTrigExpr, MAX_TRUNCATION_DEGREE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProveError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid claim: {0}")]
    Invalid(String),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

impl From<enclose::DomainError> for ProveError {
    fn from(e: enclose::DomainError) -> Self {
        ProveError::Domain(e.0)
    }
}

/// One side of a claim.
#[derive(Debug, Clone)]
pub enum Expr {
    Function(FunctionSpec),
    Bound(BoundPoly),
    Poly(LaurentPoly),
}

impl Expr {
    pub fn function(id: FunctionId) -> Expr {
        Expr::Function(id.into())
    }

    /// A function name, a catalog bound name, or an inline polynomial.
    pub fn parse(s: &str, default_var: Var) -> Result<Expr, ProveError> {
        let s = s.trim();
        if let Ok(id) = s.parse::<FunctionId>() {
            return Ok(Expr::function(id));
        }
        if let Ok(b) = catalog::named(s) {
            return Ok(Expr::Bound(b));
        }
        LaurentPoly::parse(s, default_var).map(Expr::Poly).map_err(|e| {
            ProveError::Invalid(format!("'{s}' is neither a function, a bound name nor a polynomial ({e})"))
        })
    }

    pub fn var(&self) -> Var {
        match self {
            Expr::Function(f) => f.natural_var(),
            Expr::Bound(b) => b.var(),
            Expr::Poly(p) => p.var,
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            Expr::Function(_) => false,
            Expr::Bound(b) => b.body.is_polynomial() && b.body.poly.degree() == 0,
            Expr::Poly(p) => p.is_polynomial() && p.poly.degree() == 0,
        }
    }

    /// Enclosure over the points with `x ∈ X`.
    pub fn enclose_x(&self, x: Interval) -> Result<Interval, ProveError> {
        let v = compile(self).enclose(x);
        if v.is_empty() || !v.lo.is_finite() || !v.hi.is_finite() {
            // rerun the kernel to surface its domain error
            if let Expr::Function(f) = self {
                enclose_kernel(Kernel::of(f.id), x)?;
            }
            return Err(ProveError::Domain(format!("{self} cannot be evaluated at x in {x}")));
        }
        Ok(v)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Function(s) => write!(f, "{}", s.id),
            Expr::Bound(b) => f.write_str(&b.name),
            Expr::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// `lhs < rhs` for all points of the open interval `(lo, hi)` of `var`.
#[derive(Debug, Clone)]
pub struct Claim {
    pub lhs: Expr,
    pub rhs: Expr,
    pub var: Var,
    pub lo: PiExpr,
    pub hi: PiExpr,
}

impl Claim {
    /// The interval variable follows the left side, unless that side is a constant.
    pub fn new(lhs: Expr, rhs: Expr, lo: PiExpr, hi: PiExpr) -> Claim {
        let var = if lhs.is_constant() { rhs.var() } else { lhs.var() };
        Claim { lhs, rhs, var, lo, hi }
    }

    pub fn in_var(mut self, var: Var) -> Claim {
        self.var = var;
        self
    }

    /// Endpoints in `x`.
    fn x_ends(&self) -> (PiExpr, PiExpr) {
        match self.var {
            Var::X => (self.lo.clone(), self.hi.clone()),
            Var::T => {
                let h = PiExpr::half_pi();
                (&h - &self.hi, &h - &self.lo)
            }
        }
    }

    fn x_of(&self, w: f64) -> Interval {
        match self.var {
            Var::X => Interval::point(w),
            Var::T => half_pi() - Interval::point(w),
        }
    }

    fn w_of(&self, x: f64) -> f64 {
        match self.var {
            Var::X => x,
            Var::T => std::f64::consts::FRAC_PI_2 - x,
        }
    }

    fn w_interval(&self, x: Interval) -> Interval {
        match self.var {
            Var::X => x,
            Var::T => half_pi() - x,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {} on ({}, {}) in {}", self.lhs, self.rhs, self.lo, self.hi, self.var)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ProveOptions {
    pub max_depth: u32,
    pub min_width: f64,
    pub record_leaves: bool,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions { max_depth: 40, min_width: 1e-12, record_leaves: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Undecided,
}

impl Status {
    /// Combines the verdicts of two parts of a claim.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Undecided, _) | (_, Undecided) => Undecided,
            _ => Verified,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Undecided => "undecided",
        })
    }
}

/// A point (in the claim's variable) where `lhs ≥ rhs` is certified.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub point: f64,
    pub lhs: Interval,
    pub rhs: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndpointCert {
    pub at: String,
    pub side: &'static str,
    /// Power of the first nonzero term of `rhs − lhs` in the distance to the endpoint (−1 for a pole).
    pub order: Option<i32>,
    pub leading: Option<String>,
    pub delta: f64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Leaf {
    pub lo: f64,
    pub hi: f64,
    /// Certified lower bound of `rhs − lhs` on the leaf.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCert {
    pub claim: String,
    pub status: Status,
    pub leaf_count: usize,
    pub max_depth: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub endpoints: Vec<EndpointCert>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaves: Option<Vec<Leaf>>,
}

impl BoundCert {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

// ---------------------------------------------------------------------------
// compiled claims

#[derive(Debug, Clone)]
struct Kappa {
    degree: usize,
    value: Interval,
    anchor_x: PiExpr,
    kernel: Kernel,
}

/// `principal/v + poly(v) + κ·v^d` with `v` either `x` or `π/2 − x`.
#[derive(Debug, Clone)]
struct PolyNode {
    coord: Var,
    principal: Option<PiExpr>,
    poly: PiPoly,
    coeffs: Vec<Interval>,
    kappa: Option<Kappa>,
}

#[derive(Debug, Clone)]
enum Node {
    Kernel(Kernel),
    Poly(PolyNode),
}

fn coord_of(coord: Var, x: Interval) -> Interval {
    match coord {
        Var::X => x,
        Var::T => half_pi() - x,
    }
}

fn compile_poly(p: &LaurentPoly) -> Node {
    let kappa = p.extra.as_ref().map(|e| Kappa {
        degree: e.degree,
        value: e.value,
        anchor_x: match p.var {
            Var::X => e.anchor.clone(),
            Var::T => &PiExpr::half_pi() - &e.anchor,
        },
        kernel: Kernel::of(e.function),
    });
    Node::Poly(PolyNode {
        coord: p.var,
        principal: p.principal.clone(),
        poly: p.poly.clone(),
        coeffs: p.poly.coeff_enclosures(),
        kappa,
    })
}

fn compile(e: &Expr) -> Node {
    match e {
        Expr::Function(f) => Node::Kernel(Kernel::of(f.id)),
        Expr::Bound(b) => compile_poly(&b.body),
        Expr::Poly(p) => compile_poly(p),
    }
}

impl Node {
    fn enclose(&self, x: Interval) -> Interval {
        match self {
            Node::Kernel(k) => enclose_kernel(*k, x).unwrap_or(Interval::ENTIRE),
            Node::Poly(p) => {
                let v = coord_of(p.coord, x);
                let mut out = horner(&p.coeffs, v);
                if let Some(c) = &p.principal {
                    out = out + c.enclose() / v;
                }
                if let Some(k) = &p.kappa {
                    out = out + k.value * v.powi(k.degree as u32);
                }
                out
            }
        }
    }
}

/// A Taylor model in the distance `h` to an expansion point, with the
/// exactly known coefficients alongside. Index 0 of `exact` is the `1/h`
/// coefficient, index `j + 1` the `h^j` one.
struct Expansion {
    tm: Tm,
    exact: Vec<Option<PiExpr>>,
}

impl Expansion {
    fn approx(tm: Tm) -> Expansion {
        let n = tm.c.len() + 1;
        Expansion { tm, exact: vec![None; n] }
    }

    fn combine(&self, o: &Expansion, negate: bool) -> Expansion {
        let tm = if negate { self.tm.sub(&o.tm) } else { self.tm.add(&o.tm) };
        let exact = self
            .exact
            .iter()
            .zip(&o.exact)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(if negate { a - b } else { a + b }),
                _ => None,
            })
            .collect();
        Expansion { tm, exact }
    }

    fn enclosure(&self, idx: usize) -> Interval {
        let iv = if idx == 0 { self.tm.principal } else { self.tm.c[idx - 1] };
        match &self.exact[idx] {
            Some(e) => e.enclose().intersect(&iv),
            None => iv,
        }
    }
}

type Series0 = (Option<PiExpr>, Vec<PiExpr>);

fn series_cache(kernel: Kernel, k: usize) -> Series0 {
    static CACHE: OnceLock<Mutex<HashMap<(Kernel, usize), Series0>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(kernel, k)) {
        return v.clone();
    }
    let v = kernel_series0(kernel, k);
    cache.lock().unwrap().insert((kernel, k), v.clone());
    v
}

/// Where and in which direction a node is expanded.
struct Point<'a> {
    iv: Interval,
    exact: Option<&'a PiExpr>,
    sigma: f64,
    k: usize,
    r: f64,
}

fn is_exactly(e: Option<&PiExpr>, v: &PiExpr) -> bool {
    e.is_some_and(|e| e == v)
}

fn expand(node: &Node, at: &Point) -> Result<Expansion, ProveError> {
    let (k, r, sigma) = (at.k, at.r, at.sigma);
    match node {
        Node::Kernel(kernel) => {
            let reflected = if is_exactly(at.exact, &PiExpr::zero()) && sigma > 0.0 {
                Some(*kernel)
            } else if is_exactly(at.exact, &PiExpr::half_pi()) && sigma < 0.0 {
                Some(kernel.reflect())
            } else {
                None
            };
            match reflected {
                Some(kz) => {
                    let tm = kernel_tm0(kz, k, r)?;
                    let (p, c) = series_cache(kz, k);
                    let mut exact = vec![Some(p.unwrap_or_else(PiExpr::zero))];
                    exact.extend(c.into_iter().take(k + 1).map(Some));
                    Ok(Expansion { tm, exact })
                }
                None => Ok(Expansion::approx(kernel_tm_at(*kernel, at.iv, sigma, k, r)?)),
            }
        }
        Node::Poly(p) => {
            // the coordinate is o + s·h
            let (o_iv, o_exact, s) = match p.coord {
                Var::X => (at.iv, at.exact.cloned(), sigma),
                Var::T => (half_pi() - at.iv, at.exact.map(|e| &PiExpr::half_pi() - e), -sigma),
            };
            let s_iv = Interval::point(s);
            let s_exact = PiExpr::int(s as i64);
            let mut exact: Vec<Option<PiExpr>> = vec![None; k + 2];
            // polynomial part
            let (coeffs, poly_exact) = match &o_exact {
                Some(o) => {
                    let shifted = p.poly.compose_affine(o, &s_exact);
                    (shifted.coeff_enclosures(), Some(shifted))
                }
                None => (shift_poly(&p.coeffs, o_iv, s), None),
            };
            let mut tm = Tm::from_coeffs(coeffs, Interval::ZERO, k, r);
            if let Some(sh) = &poly_exact {
                exact[0] = Some(PiExpr::zero());
                for j in 0..=k {
                    exact[j + 1] = Some(sh.coeff(j));
                }
            }
            // principal part c/(o + s·h)
            if let Some(c) = &p.principal {
                let c_iv = c.enclose();
                let o_zero = o_exact.as_ref().is_some_and(|o| o.is_zero());
                if o_zero {
                    tm.principal = c_iv * s_iv;
                    exact[0] = exact[0].take().map(|z| &z + &c.scale(&s_exact.as_rational().unwrap()));
                } else {
                    let part = Tm::linear(o_iv, s_iv, k, r).recip().scale(c_iv);
                    tm = tm.add(&part);
                    let inv = o_exact.as_ref().and_then(|o| o.recip());
                    match inv {
                        Some(inv) => {
                            // c/o · Σ (−s/o)^j h^j
                            let ratio = &(-&s_exact) * &inv;
                            let mut term = c * &inv;
                            for j in 0..=k {
                                exact[j + 1] = exact[j + 1].take().map(|z| &z + &term);
                                term = &term * &ratio;
                            }
                        }
                        None => exact.iter_mut().skip(1).for_each(|e| *e = None),
                    }
                }
            }
            if let Some(kp) = &p.kappa {
                let part = power_tm(o_iv, s, kp.degree, k, r).scale(kp.value);
                tm = tm.add(&part);
                let o_zero = o_exact.as_ref().is_some_and(|o| o.is_zero());
                for j in 0..=k {
                    if !(o_zero && j != kp.degree) {
                        exact[j + 1] = None;
                    }
                }
            }
            Ok(Expansion { tm, exact })
        }
    }
}

struct Compiled<'a> {
    claim: &'a Claim,
    lhs: Node,
    rhs: Node,
    a: PiExpr,
    b: PiExpr,
    a_iv: Interval,
    b_iv: Interval,
    opts: ProveOptions,
}

const K_END: usize = 24;
const K_LEAF: usize = 10;
/// Depth above which subdivision runs sequentially.
const PAR_DEPTH: u32 = 12;

/// Is `node` a polynomial carrying a term fitted to `other` at `e`?
fn anchored(node: &Node, other: &Node, e: &PiExpr) -> bool {
    match (node, other) {
        (Node::Poly(p), Node::Kernel(k)) => p.kappa.as_ref().is_some_and(|kp| &kp.anchor_x == e && kp.kernel == *k),
        _ => false,
    }
}

enum Lead {
    Found { idx: usize, sign: Sign, text: String },
    Unknown { idx: usize },
    AllZero,
}

fn leading(d: &Expansion) -> Lead {
    for idx in 0..d.exact.len() {
        let iv = d.enclosure(idx);
        match &d.exact[idx] {
            Some(e) if e.is_zero() => continue,
            Some(e) => return Lead::Found { idx, sign: e.sign(), text: e.to_string() },
            None => {
                if iv.lo == 0.0 && iv.hi == 0.0 {
                    continue;
                }
                return match Sign::of_interval(&iv) {
                    Some(sign) => Lead::Found { idx, sign, text: format!("{iv}") },
                    None => Lead::Unknown { idx },
                };
            }
        }
    }
    Lead::AllZero
}

/// Enclosure of `d(h)/h^v` over `H ⊂ [0, r]`, with `v = idx − 1`.
fn q_range(d: &Expansion, idx: usize, h: Interval) -> Interval {
    let coeffs: Vec<Interval> = (idx..d.exact.len()).map(|i| d.enclosure(i)).collect();
    let top = (d.exact.len() - idx) as u32;
    horner(&coeffs, h) + h.powi(top) * d.tm.rem
}

fn q_positive(d: &Expansion, idx: usize, h: Interval, depth: u32) -> bool {
    let v = q_range(d, idx, h);
    if v.lo > 0.0 {
        return true;
    }
    if depth == 0 || v.hi <= 0.0 {
        return false;
    }
    let (l, r) = h.split();
    q_positive(d, idx, l, depth - 1) && q_positive(d, idx, r, depth - 1)
}

struct EndResult {
    cert: EndpointCert,
    delta: f64,
    witness: Option<Witness>,
}

impl<'a> Compiled<'a> {
    fn new(claim: &'a Claim, opts: ProveOptions) -> Result<Self, ProveError> {
        let (a, b) = claim.x_ends();
        if a.cmp_value(&b).is_ge() {
            return Err(ProveError::Invalid(format!("empty interval ({}, {})", claim.lo, claim.hi)));
        }
        for side in [&claim.lhs, &claim.rhs] {
            match side {
                Expr::Function(f) => {
                    let dom = f.id.domain();
                    let h = PiExpr::half_pi();
                    let (lo, hi) = match f.id.natural_var() {
                        Var::X => (a.clone(), b.clone()),
                        Var::T => (&h - &b, &h - &a),
                    };
                    if lo.cmp_value(&dom.lo).is_lt() || hi.cmp_value(&dom.hi).is_gt() {
                        return Err(ProveError::Domain(format!("{} is not defined on all of ({lo}, {hi})", f.id)));
                    }
                }
                Expr::Bound(_) | Expr::Poly(_) => {
                    let body = match side {
                        Expr::Bound(bp) => &bp.body,
                        Expr::Poly(p) => p,
                        _ => unreachable!(),
                    };
                    if body.principal.is_some() {
                        // the pole sits where the coordinate vanishes
                        let pole = match body.var {
                            Var::X => PiExpr::zero(),
                            Var::T => PiExpr::half_pi(),
                        };
                        if pole.cmp_value(&a).is_gt() && pole.cmp_value(&b).is_lt() {
                            return Err(ProveError::Domain(format!("{side} has a pole inside the interval")));
                        }
                    }
                }
            }
        }
        Ok(Compiled {
            claim,
            lhs: compile(&claim.lhs),
            rhs: compile(&claim.rhs),
            a_iv: a.enclose(),
            b_iv: b.enclose(),
            a,
            b,
            opts,
        })
    }

    fn diff(&self, x: Interval) -> (Interval, Interval, Interval) {
        let l = self.lhs.enclose(x);
        let r = self.rhs.enclose(x);
        (l, r, r - l)
    }

    fn inside(&self, x: Interval) -> bool {
        x.lo > self.a_iv.hi && x.hi < self.b_iv.lo
    }

    /// A certified violation at the claim-variable point nearest to `x`.
    fn witness_near(&self, x: f64) -> Option<Witness> {
        let w = self.claim.w_of(x);
        let xi = self.claim.x_of(w);
        if !self.inside(xi) {
            return None;
        }
        let (l, r, d) = self.diff(xi);
        (d.hi <= 0.0).then_some(Witness { point: w, lhs: l, rhs: r })
    }

    fn expand_diff(&self, at: &Point) -> Result<Expansion, ProveError> {
        let l = expand(&self.lhs, at)?;
        let r = expand(&self.rhs, at)?;
        Ok(r.combine(&l, true))
    }

    fn endpoint(&self, right: bool) -> Result<EndResult, ProveError> {
        let (e, e_iv, sigma) = if right { (&self.b, self.b_iv, -1.0) } else { (&self.a, self.a_iv, 1.0) };
        let width = (self.b_iv - self.a_iv).lo;
        let special = e.is_zero() || e == &PiExpr::half_pi();
        let (k, r0) = if special { (K_END, 1.0f64.min(0.75 * width)) } else { (K_END / 2, 0.25f64.min(0.75 * width)) };
        // the endpoint as seen in the claim's variable
        let (at_text, side) = {
            let w_right = right ^ (self.claim.var == Var::T);
            let at = if w_right { &self.claim.hi } else { &self.claim.lo };
            (at.to_string(), if w_right { "upper" } else { "lower" })
        };
        let mut cert =
            EndpointCert { at: at_text, side, order: None, leading: None, delta: 0.0, status: Status::Undecided };
        let mut r = r0;
        for _attempt in 0..4 {
            let at = Point { iv: e_iv, exact: Some(e), sigma, k, r };
            let mut d = match self.expand_diff(&at) {
                Ok(d) => d,
                Err(ProveError::Domain(_)) => {
                    r *= 0.5;
                    continue;
                }
                Err(err) => return Err(err),
            };
            if anchored(&self.lhs, &self.rhs, e) || anchored(&self.rhs, &self.lhs, e) {
                // the fitted term makes both sides agree exactly at e
                d.exact[0] = Some(PiExpr::zero());
                d.exact[1] = Some(PiExpr::zero());
            }
            if !d.tm.is_finite() {
                r *= 0.5;
                continue;
            }
            match leading(&d) {
                Lead::AllZero => return Ok(EndResult { cert, delta: 0.0, witness: None }),
                Lead::Unknown { idx } => {
                    cert.order = Some(idx as i32 - 1);
                    return Ok(EndResult { cert, delta: 0.0, witness: None });
                }
                Lead::Found { idx, sign, text } => {
                    cert.order = Some(idx as i32 - 1);
                    cert.leading = Some(text);
                    if sign == Sign::Positive {
                        for i in 0..=30 {
                            let delta = r * 0.5f64.powi(i);
                            if q_positive(&d, idx, Interval::new(0.0, delta), 10) {
                                cert.delta = delta;
                                cert.status = Status::Verified;
                                return Ok(EndResult { cert, delta, witness: None });
                            }
                        }
                        return Ok(EndResult { cert, delta: 0.0, witness: None });
                    }
                    // negative: look for a certified violation approaching e
                    for i in 1..=60 {
                        let h = r * 0.5f64.powi(i);
                        let x = e_iv.mid() + sigma * h;
                        let w = self.claim.w_of(x);
                        let xi = self.claim.x_of(w);
                        if !self.inside(xi) {
                            continue;
                        }
                        let hi = (xi - e_iv) * Interval::point(sigma);
                        let by_model = hi.lo > 0.0 && hi.hi <= r && q_range(&d, idx, hi).hi < 0.0;
                        let (l, rr, dd) = self.diff(xi);
                        if by_model || dd.hi < 0.0 {
                            cert.status = Status::Refuted;
                            let witness = Some(Witness { point: w, lhs: l, rhs: rr });
                            return Ok(EndResult { cert, delta: 0.0, witness });
                        }
                    }
                    return Ok(EndResult { cert, delta: 0.0, witness: None });
                }
            }
        }
        Ok(EndResult { cert, delta: 0.0, witness: None })
    }

    /// Lower bound of the difference on `[x.lo, x.hi]` from centred Taylor models.
    fn leaf_model(&self, x: Interval) -> Option<f64> {
        let mid = x.mid();
        let half = (x.hi - mid).max(mid - x.lo);
        let mut lo = f64::INFINITY;
        for sigma in [1.0, -1.0] {
            let at = Point { iv: Interval::point(mid), exact: None, sigma, k: K_LEAF, r: half };
            let d = self.expand_diff(&at).ok()?;
            if !d.tm.is_finite() {
                return None;
            }
            let h = Interval::new(0.0, half);
            lo = lo.min((horner(&d.tm.c, h) + h.powi(K_LEAF as u32 + 1) * d.tm.rem).lo);
        }
        Some(lo)
    }

    fn subdivide(&self, x: Interval, depth: u32) -> Outcome {
        let (_, _, d) = self.diff(x);
        if d.lo > 0.0 {
            return Outcome::verified_leaf(self, x, d.lo, depth);
        }
        if d.hi < 0.0 {
            if let Some(w) = self.witness_near(x.mid()) {
                return Outcome::refuted(w, depth);
            }
        }
        if x.width() <= 0.25 {
            if let Some(m) = self.leaf_model(x) {
                if m > 0.0 {
                    return Outcome::verified_leaf(self, x, m, depth);
                }
            }
        }
        if depth >= self.opts.max_depth || x.width() < self.opts.min_width {
            if let Some(w) = self.witness_near(x.mid()) {
                return Outcome::refuted(w, depth);
            }
            return Outcome::undecided(depth);
        }
        let (l, r) = x.split();
        let (ol, or) = if depth < PAR_DEPTH {
            rayon::join(|| self.subdivide(l, depth + 1), || self.subdivide(r, depth + 1))
        } else {
            (self.subdivide(l, depth + 1), self.subdivide(r, depth + 1))
        };
        ol.merge(or)
    }
}

struct Outcome {
    status: Status,
    leaves: usize,
    max_depth: u32,
    witness: Option<Witness>,
    leaf_list: Vec<Leaf>,
}

impl Outcome {
    fn verified_leaf(c: &Compiled, x: Interval, margin: f64, depth: u32) -> Outcome {
        let leaf_list = if c.opts.record_leaves {
            let w = c.claim.w_interval(x);
            vec![Leaf { lo: w.lo, hi: w.hi, margin }]
        } else {
            Vec::new()
        };
        Outcome { status: Status::Verified, leaves: 1, max_depth: depth, witness: None, leaf_list }
    }

    fn refuted(w: Witness, depth: u32) -> Outcome {
        Outcome { status: Status::Refuted, leaves: 1, max_depth: depth, witness: Some(w), leaf_list: Vec::new() }
    }

    fn undecided(depth: u32) -> Outcome {
        Outcome { status: Status::Undecided, leaves: 1, max_depth: depth, witness: None, leaf_list: Vec::new() }
    }

    fn merge(mut self, o: Outcome) -> Outcome {
        self.status = self.status.and(o.status);
        self.leaves += o.leaves;
        self.max_depth = self.max_depth.max(o.max_depth);
        self.witness = self.witness.or(o.witness);
        self.leaf_list.extend(o.leaf_list);
        self
    }
}

/// Decides `claim.lhs < claim.rhs` on the open interval of the claim.
pub fn prove_claim(claim: &Claim, opts: &ProveOptions) -> Result<BoundCert, ProveError> {
    let c = Compiled::new(claim, *opts)?;
    let left = c.endpoint(false)?;
    let right = c.endpoint(true)?;
    let mut cert = BoundCert {
        claim: claim.to_string(),
        status: left.cert.status.and(right.cert.status),
        leaf_count: 0,
        max_depth: 0,
        witness: None,
        endpoints: Vec::new(),
        leaves: opts.record_leaves.then(Vec::new),
    };
    let witness = left.witness.clone().or(right.witness.clone());
    let mut ends = vec![left.cert, right.cert];
    if claim.var == Var::T {
        ends.reverse();
    }
    cert.endpoints = ends;
    if cert.status != Status::Verified {
        cert.witness = witness;
        return Ok(cert);
    }
    let lo = (c.a_iv + Interval::point(left.delta)).lo;
    let hi = (c.b_iv - Interval::point(right.delta)).hi;
    if lo <= hi {
        let out = c.subdivide(Interval::new(lo, hi), 0);
        cert.status = out.status;
        cert.leaf_count = out.leaves;
        cert.max_depth = out.max_depth;
        cert.witness = out.witness;
        if let Some(leaves) = &mut cert.leaves {
            *leaves = out.leaf_list;
            if claim.var == Var::T {
                leaves.reverse();
            }
        }
    }
    Ok(cert)
}

/// Decides `lhs < rhs` on `(lo, hi)`; the interval variable is chosen as in [`Claim::new`].
pub fn prove_less(lhs: Expr, rhs: Expr, lo: PiExpr, hi: PiExpr, opts: &ProveOptions) -> Result<BoundCert, ProveError> {
    prove_claim(&Claim::new(lhs, rhs, lo, hi), opts)
}

/// Decides `p > 0` on `(lo, hi)` of `p`'s variable.
pub fn prove_poly_positive(
    p: &LaurentPoly,
    lo: PiExpr,
    hi: PiExpr,
    opts: &ProveOptions,
) -> Result<BoundCert, ProveError> {
    if !p.is_polynomial() {
        return Err(ProveError::Invalid(format!("{p} is not a polynomial")));
    }
    let claim = Claim { lhs: Expr::Poly(LaurentPoly::zero(p.var)), rhs: Expr::Poly(p.clone()), var: p.var, lo, hi };
    prove_claim(&claim, opts)
}

/// Certified order of both sides at one point `w` of `var`:
/// `Some(true)` if `lhs < rhs`, `Some(false)` if `lhs > rhs`, `None` if the enclosures overlap.
pub fn certify_point(lhs: &Expr, rhs: &Expr, var: Var, w: f64) -> Result<Option<bool>, ProveError> {
    let x = match var {
        Var::X => Interval::point(w),
        Var::T => half_pi() - Interval::point(w),
    };
    let d = rhs.enclose_x(x)? - lhs.enclose_x(x)?;
    if d.lo > 0.0 {
        return Ok(Some(true));
    }
    if d.hi < 0.0 {
        return Ok(Some(false));
    }
    endpoint_sign(lhs, rhs, x)
}

/// Sign of `rhs − lhs` at `x` from the series of the difference at 0 or π/2,
/// which resolves gaps far below the size of either side.
fn endpoint_sign(lhs: &Expr, rhs: &Expr, x: Interval) -> Result<Option<bool>, ProveError> {
    let claim = Claim { lhs: lhs.clone(), rhs: rhs.clone(), var: Var::X, lo: PiExpr::zero(), hi: PiExpr::half_pi() };
    let Ok(c) = Compiled::new(&claim, ProveOptions::default()) else {
        return Ok(None);
    };
    for (e, sigma) in [(&c.a, 1.0), (&c.b, -1.0)] {
        let e_iv = e.enclose();
        let h = (x - e_iv) * Interval::point(sigma);
        if h.lo <= 0.0 || h.hi > 1.0 {
            continue;
        }
        let at = Point { iv: e_iv, exact: Some(e), sigma, k: K_END, r: h.hi };
        let Ok(mut d) = c.expand_diff(&at) else { continue };
        if !d.tm.is_finite() {
            continue;
        }
        if anchored(&c.lhs, &c.rhs, e) || anchored(&c.rhs, &c.lhs, e) {
            d.exact[0] = Some(PiExpr::zero());
            d.exact[1] = Some(PiExpr::zero());
        }
        // divide out the power of h in front of the first coefficient not known to vanish
        let Some(idx) = (0..d.exact.len()).find(|&i| match &d.exact[i] {
            Some(v) => !v.is_zero(),
            None => d.enclosure(i) != Interval::ZERO,
        }) else {
            continue;
        };
        let q = q_range(&d, idx, h);
        if q.lo > 0.0 {
            return Ok(Some(true));
        }
        if q.hi < 0.0 {
            return Ok(Some(false));
        }
    }
    Ok(None)
}

/// Enclosure of an expression at the point `w` of `var`.
pub fn enclose_at(e: &Expr, var: Var, w: f64) -> Result<Interval, ProveError> {
    let x = match var {
        Var::X => Interval::point(w),
        Var::T => half_pi() - Interval::point(w),
    };
    e.enclose_x(x)
}
