//! Sign of mixed trigonometric polynomials `Σ c_i(x) sin^a x cos^b x` on
//! sub-intervals of (0, π/2).
//!
//! The interval is split at π/4; the upper half is rewritten in
//! `t = π/2 − x`, where sine and cosine trade places, so every piece lives
//! in [0, π/4]. There the Taylor truncations of sin and cos of degrees
//! `4n−1`, `4n−2` are nonnegative lower bounds and those of degrees `4n−3`,
//! `4n−4` upper bounds. Each monomial is replaced by the product on the side
//! matching the sign of its coefficient, which leaves a polynomial to prove
//! positive.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;

use super::{prove_poly_positive, BoundCert, Leaf, ProveError, ProveOptions, Status, Witness};
use crate::approx::{LaurentPoly, Var};
use crate::exact::elementary::{cos_point, sin_point};
use crate::exact::interval::horner;
use crate::exact::pi::half_pi;
use crate::exact::{Interval, PiExpr, PiPoly};
use crate::series::{cos_taylor, sin_taylor};

/// `coeff(x)·sin(x)^sin_pow·cos(x)^cos_pow`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedTerm {
    pub coeff: PiPoly,
    pub sin_pow: u32,
    pub cos_pow: u32,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MixedTrigExpr {
    pub terms: Vec<MixedTerm>,
}

impl MixedTrigExpr {
    pub fn new(terms: Vec<MixedTerm>) -> Self {
        MixedTrigExpr { terms }
    }

    /// Enclosure of the value for `x` in the interval.
    pub fn eval(&self, x: Interval) -> Interval {
        let (s, c) = (sin_point(x), cos_point(x));
        self.eval_with(x, s, c)
    }

    fn eval_with(&self, v: Interval, s: Interval, c: Interval) -> Interval {
        self.terms.iter().fold(Interval::ZERO, |acc, t| {
            acc + horner(&t.coeff.coeff_enclosures(), v) * s.powi(t.sin_pow) * c.powi(t.cos_pow)
        })
    }

    fn negate(&self) -> MixedTrigExpr {
        MixedTrigExpr { terms: self.terms.iter().map(|t| MixedTerm { coeff: -&t.coeff, ..t.clone() }).collect() }
    }

    /// The same function written in `t = π/2 − x`.
    fn reflect(&self) -> MixedTrigExpr {
        let h = PiExpr::half_pi();
        MixedTrigExpr {
            terms: self
                .terms
                .iter()
                .map(|t| MixedTerm {
                    coeff: t.coeff.compose_affine(&h, &PiExpr::int(-1)),
                    sin_pow: t.cos_pow,
                    cos_pow: t.sin_pow,
                })
                .collect(),
        }
    }
}

impl fmt::Display for MixedTrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str("(")?;
            crate::exact::pipoly::fmt_poly(f, None, t.coeff.coeffs(), 'x')?;
            f.write_str(")")?;
            for (p, name) in [(t.sin_pow, "sin x"), (t.cos_pow, "cos x")] {
                match p {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*({name})^{p}")?,
                }
            }
        }
        Ok(())
    }
}

/// `(π² − 4x²) sin x − x·T(π/2 − x) cos x` for a polynomial `T` in `t`.
pub fn becker_stark_mixed(t_poly: &PiPoly) -> MixedTrigExpr {
    let quad = PiPoly::new(vec![PiExpr::pi_pow(2), PiExpr::zero(), PiExpr::int(-4)]);
    let shifted = t_poly.compose_affine(&PiExpr::half_pi(), &PiExpr::int(-1));
    let second = -&(&PiPoly::var() * &shifted);
    MixedTrigExpr::new(vec![
        MixedTerm { coeff: quad, sin_pow: 1, cos_pow: 0 },
        MixedTerm { coeff: second, sin_pow: 0, cos_pow: 1 },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimedSign {
    Positive,
    Negative,
}

/// Highest truncation level; level `n` uses sine degrees `4n−1`, `4n−3`.
const MAX_LEVEL: usize = 5;
/// Largest sine or cosine truncation degree the escalation reaches.
pub const MAX_TRUNCATION_DEGREE: usize = 4 * MAX_LEVEL - 1;
const MAX_SPLITS: u32 = 10;

fn truncation(taylor: fn(usize) -> BigRational, deg: usize) -> PiPoly {
    PiPoly::new((0..=deg).map(|k| PiExpr::rational(taylor(k))).collect())
}

struct Truncations {
    sin_lo: PiPoly,
    sin_hi: PiPoly,
    cos_lo: PiPoly,
    cos_hi: PiPoly,
}

impl Truncations {
    fn level(n: usize) -> Self {
        Truncations {
            sin_lo: truncation(sin_taylor, 4 * n - 1),
            sin_hi: truncation(sin_taylor, 4 * n - 3),
            cos_lo: truncation(cos_taylor, 4 * n - 2),
            cos_hi: truncation(cos_taylor, 4 * n - 4),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Polarity {
    NonNeg,
    NonPos,
    Mixed,
}

fn sign_on(coeff: &PiPoly, lo: f64, hi: f64, at_zero: bool, depth: u32) -> Polarity {
    // a zero of order m at v = 0 does not change the sign for v ≥ 0
    let (c, lo_eff) = match (at_zero, coeff.valuation()) {
        (true, Some(m)) if m > 0 => (coeff.unshift(m), lo),
        _ => (coeff.clone(), lo),
    };
    let iv = horner(&c.coeff_enclosures(), Interval::new(lo_eff, hi));
    if iv.lo >= 0.0 {
        return Polarity::NonNeg;
    }
    if iv.hi <= 0.0 {
        return Polarity::NonPos;
    }
    if depth == 0 {
        return Polarity::Mixed;
    }
    let mid = 0.5 * (lo + hi);
    let l = sign_on(&c, lo, mid, at_zero, depth - 1);
    let r = sign_on(&c, mid, hi, false, depth - 1);
    if l == r {
        l
    } else {
        Polarity::Mixed
    }
}

/// A polynomial below the expression on the sub-interval, for one choice of polarities.
fn lower_poly(e: &MixedTrigExpr, pol: &[Polarity], tr: &Truncations, w: Interval) -> Option<PiPoly> {
    let mut out = PiPoly::zero();
    for (t, p) in e.terms.iter().zip(pol) {
        if t.sin_pow == 0 && t.cos_pow == 0 {
            out = &out + &t.coeff;
            continue;
        }
        let lo = &tr.sin_lo.pow(t.sin_pow) * &tr.cos_lo.pow(t.cos_pow);
        let hi = &tr.sin_hi.pow(t.sin_pow) * &tr.cos_hi.pow(t.cos_pow);
        let piece = match p {
            Polarity::NonNeg => &t.coeff * &lo,
            Polarity::NonPos => &t.coeff * &hi,
            Polarity::Mixed => {
                // c·m ≥ c·L − M·(U − L) with M ≥ |c| on w
                let m = horner(&t.coeff.coeff_enclosures(), w).mag();
                let m = PiExpr::rational(BigRational::from_float(m.next_up())?);
                &(&t.coeff * &lo) - &(&hi - &lo).scale(&m)
            }
        };
        out = &out + &piece;
    }
    Some(out)
}

struct Piece<'a> {
    expr: MixedTrigExpr,
    /// The expression in `x`, for witnesses.
    orig: &'a MixedTrigExpr,
    var: Var,
    /// Closed ends must be certified with a nonzero value there.
    closed_hi: bool,
    opts: &'a ProveOptions,
}

struct PieceOutcome {
    status: Status,
    leaves: usize,
    max_depth: u32,
    witness: Option<Witness>,
    leaf_list: Vec<Leaf>,
}

impl PieceOutcome {
    fn merge(mut self, o: PieceOutcome) -> PieceOutcome {
        self.status = self.status.and(o.status);
        self.leaves += o.leaves;
        self.max_depth = self.max_depth.max(o.max_depth);
        self.witness = self.witness.or(o.witness);
        self.leaf_list.extend(o.leaf_list);
        self
    }
}

fn to_x(var: Var, v: Interval) -> Interval {
    match var {
        Var::X => v,
        Var::T => half_pi() - v,
    }
}

impl Piece<'_> {
    /// Certified violation of `expr > 0` at the midpoint of `(lo, hi)`.
    fn witness(&self, lo: f64, hi: f64) -> Option<Witness> {
        let x = to_x(self.var, Interval::point(0.5 * (lo + hi))).mid();
        let val = self.orig.eval(Interval::point(x));
        (val.hi < 0.0).then_some(Witness { point: x, lhs: Interval::ZERO, rhs: val })
    }

    fn run(
        &self,
        lo: &PiExpr,
        hi: &PiExpr,
        closed_lo: bool,
        closed_hi: bool,
        depth: u32,
        cache: &mut HashMap<(usize, Vec<Polarity>), PiPoly>,
    ) -> Result<PieceOutcome, ProveError> {
        let (lo_iv, hi_iv) = (lo.enclose(), hi.enclose());
        let w = Interval::new(lo_iv.lo, hi_iv.hi);
        let pol: Vec<Polarity> =
            self.expr.terms.iter().map(|t| sign_on(&t.coeff, w.lo.max(0.0), w.hi, lo.is_zero(), 6)).collect();
        let mut total = PieceOutcome {
            status: Status::Undecided,
            leaves: 0,
            max_depth: depth,
            witness: None,
            leaf_list: Vec::new(),
        };
        for level in 1..=MAX_LEVEL {
            let key = (level, pol.clone());
            let p = match cache.get(&key) {
                Some(p) => p.clone(),
                None => {
                    let Some(p) = lower_poly(&self.expr, &pol, &Truncations::level(level), w) else { continue };
                    if !pol.contains(&Polarity::Mixed) {
                        cache.insert(key, p.clone());
                    }
                    p
                }
            };
            let lp = LaurentPoly::poly(self.var, p);
            let cert = prove_poly_positive(&lp, lo.clone(), hi.clone(), self.opts)?;
            total.leaves += cert.leaf_count;
            total.max_depth = total.max_depth.max(depth + cert.max_depth);
            if cert.status == Status::Verified {
                let closed = |i: usize| cert.endpoints[i].order == Some(0);
                if (!closed_lo || closed(0)) && (!closed_hi || closed(1)) {
                    total.status = Status::Verified;
                    if let Some(l) = cert.leaves {
                        total.leaf_list = l;
                    }
                    return Ok(total);
                }
            }
        }
        if let Some(wt) = self.witness(lo_iv.mid(), hi_iv.mid()) {
            total.status = Status::Refuted;
            total.witness = Some(wt);
            return Ok(total);
        }
        if depth >= MAX_SPLITS {
            return Ok(total);
        }
        let mid = BigRational::from_float(0.5 * (lo_iv.mid() + hi_iv.mid()))
            .map(PiExpr::rational)
            .ok_or_else(|| ProveError::Invalid("non-finite split point".into()))?;
        let left = self.run(lo, &mid, closed_lo, true, depth + 1, cache)?;
        if left.status == Status::Refuted {
            return Ok(left);
        }
        let right = self.run(&mid, hi, true, closed_hi, depth + 1, cache)?;
        let mut out = left.merge(right);
        out.leaves += total.leaves;
        Ok(out)
    }
}

/// Decides `e > 0` (or `e < 0`) on the open interval `(lo, hi) ⊂ (0, π/2)` of `x`.
pub fn mixed_trig_sign(
    e: &MixedTrigExpr,
    lo: PiExpr,
    hi: PiExpr,
    claimed: ClaimedSign,
    opts: &ProveOptions,
) -> Result<BoundCert, ProveError> {
    let half = PiExpr::half_pi();
    if lo.cmp_value(&PiExpr::zero()).is_lt() || hi.cmp_value(&half).is_gt() || lo.cmp_value(&hi).is_ge() {
        return Err(ProveError::Domain(format!("({lo}, {hi}) is not a sub-interval of (0, pi/2)")));
    }
    let target = match claimed {
        ClaimedSign::Positive => e.clone(),
        ClaimedSign::Negative => e.negate(),
    };
    let quarter = PiExpr::monomial(BigRational::new(1.into(), 4.into()), 1);
    let mut pieces: Vec<(Piece, PiExpr, PiExpr, bool)> = Vec::new();
    if lo.cmp_value(&quarter).is_lt() {
        let (end, closed) = if hi.cmp_value(&quarter).is_gt() { (quarter.clone(), true) } else { (hi.clone(), false) };
        pieces.push((
            Piece { expr: target.clone(), orig: &target, var: Var::X, closed_hi: closed, opts },
            lo.clone(),
            end,
            false,
        ));
    }
    if hi.cmp_value(&quarter).is_gt() {
        let t_hi = if lo.cmp_value(&quarter).is_lt() { quarter.clone() } else { &half - &lo };
        pieces.push((
            Piece { expr: target.reflect(), orig: &target, var: Var::T, closed_hi: false, opts },
            &half - &hi,
            t_hi,
            false,
        ));
    }
    let mut status = Status::Verified;
    let mut cert = BoundCert {
        claim: format!("{e} {} 0 on ({lo}, {hi})", if claimed == ClaimedSign::Positive { ">" } else { "<" }),
        status,
        leaf_count: 0,
        max_depth: 0,
        witness: None,
        endpoints: Vec::new(),
        leaves: opts.record_leaves.then(Vec::new),
    };
    for (piece, a, b, closed_lo) in &pieces {
        let mut cache = HashMap::new();
        let out = piece.run(a, b, *closed_lo, piece.closed_hi, 0, &mut cache)?;
        status = status.and(out.status);
        cert.leaf_count += out.leaves;
        cert.max_depth = cert.max_depth.max(out.max_depth);
        if cert.witness.is_none() {
            cert.witness = out.witness.map(|w| match claimed {
                ClaimedSign::Positive => w,
                ClaimedSign::Negative => Witness { point: w.point, lhs: -w.rhs, rhs: w.lhs },
            });
        }
        if let Some(l) = &mut cert.leaves {
            l.extend(out.leaf_list);
        }
        if status == Status::Refuted {
            break;
        }
    }
    cert.status = status;
    Ok(cert)
}
