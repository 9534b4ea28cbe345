//! Executable verification cases: every inequality chain, limit, sign
//! pattern and coefficient identity of the bounds catalog, each run through
//! the prover and collected into a deterministic report.

mod report;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::approx::{catalog, ApproxError, BoundPoly, FunctionId, LaurentPoly, Side, Var};
use crate::exact::{parse_constant, Interval, PiExpr, Sign};
use crate::prover::{
    becker_stark_mixed, certify_point, enclose_at, mixed_trig_sign, prove_claim, prove_poly_positive, BoundCert, Claim,
    ClaimedSign, Expr, ProveError, ProveOptions, Status, Witness,
};
use crate::series::{becker_stark_C, psi_coeff_conjecture, psi_coeff_product, steckin_alpha};

pub use report::{ClaimReport, Format, RunConfig, SuiteReport};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown case id '{0}'")]
    UnknownCase(String),
    #[error("invalid filter: {0}")]
    Filter(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Prove(#[from] ProveError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

/// Case parameters; `None` selects the case's default.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub big_m: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSpec {
    pub id: &'static str,
    pub title: &'static str,
    pub expected: Status,
}

const CASES: &[(&str, &str)] = &[
    ("S1", "classical sinc bounds 1 - x^2/6 < sinc x < 1 - x^2/6 + x^4/120"),
    ("S2", "sinc between Q4 and R4"),
    ("S3", "Steckin remainder between Q1 and R1"),
    ("S4", "Steckin remainder on (0, 1), quadratic lower and linear upper bound"),
    ("S5", "Becker-Stark ratio between quadratic and cubic bounds in t"),
    ("S6", "Becker-Stark ratio below a quartic on (0, 1.371)"),
    ("T1", "Taylor truncations of sinc of degrees 4k1-2 and 4k2"),
    ("T2", "sinc chain Q4 < T6L < sinc < T4U < R4 and its polynomial obligations"),
    ("T3", "two-point bounds of the Steckin remainder in t"),
    ("T4", "partial sums of the Steckin remainder series on (0, 1)"),
    ("T5", "Becker-Stark ratio between psi partial sums and the mixed-trig obligations"),
    ("T6", "two-point and partial-sum bounds of the Becker-Stark ratio"),
    ("C1.1", "Q1 < F1L < f < F1U = R1"),
    ("C1.2", "Q1 < F1L < F3L < f < F3U < F1U"),
    ("CONJ1a", "product and closed form of the psi coefficients agree"),
    ("CONJ1b", "psi partial sums bracket psi on a grid"),
    ("LIM-steckin", "the Steckin remainder tends to 2/pi at pi/2"),
    ("JORDAN-2", "quadratic refinement of Jordan's inequality"),
    ("JORDAN-3", "quartic refinement of Jordan's inequality"),
    ("CROSS-S5L", "crossing of the quadratic Becker-Stark bound near x = 0.373"),
    ("CROSS-S5R", "crossing of the cubic Becker-Stark bound near x = 0.301"),
    ("CROSS-S6", "crossing of the quartic Becker-Stark bound near x = 1.371"),
];

/// All cases in report order.
pub fn catalog() -> Vec<CaseSpec> {
    CASES.iter().map(|&(id, title)| CaseSpec { id, title, expected: Status::Verified }).collect()
}

/// Case ids matching a comma-separated list of glob patterns, in catalog order.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static str>, SuiteError> {
    let Some(filter) = filter else {
        return Ok(CASES.iter().map(|c| c.0).collect());
    };
    let pats = filter
        .split(',')
        .map(|p| glob::Pattern::new(p.trim()).map_err(|e| SuiteError::Filter(format!("{p}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CASES.iter().map(|c| c.0).filter(|id| pats.iter().any(|p| p.matches(id))).collect())
}

/// Per-grid comparison of a new bound against an old one for the same target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tightness {
    pub new: String,
    pub old: String,
    pub side: Side,
    pub points: usize,
    /// Points where the new bound is certified strictly closer to the target.
    pub strictly_better: usize,
    /// Points where the new bound is certified farther from the target.
    pub worse: usize,
    /// Largest gap reduction over the grid.
    pub max_improvement: f64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "is_default")]
    pub params: Params,
    pub claims: Vec<ClaimReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tightness: Vec<Tightness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn is_default(p: &Params) -> bool {
    *p == Params::default()
}

/// A certified sign change of `rhs − lhs`, in the search variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Brackets of width ≤ `tol` around the sign changes of `rhs − lhs` on the
/// open interval `(lo, hi)` of `var`, found from `samples` grid points and
/// bisection. Both ends of each bracket carry certified, opposite signs.
pub fn find_crossing(
    lhs: &Expr,
    rhs: &Expr,
    var: Var,
    (lo, hi): (f64, f64),
    samples: usize,
    tol: f64,
) -> Result<Vec<Bracket>, ProveError> {
    let sign = |w: f64| certify_point(lhs, rhs, var, w);
    let mut prev: Option<(f64, bool)> = None;
    let mut out = Vec::new();
    for w in grid(lo, hi, samples.max(2)) {
        let Some(s) = sign(w)? else { continue };
        if let Some((pw, ps)) = prev {
            if ps != s {
                let (mut a, mut b) = (pw, w);
                while b - a > tol {
                    let m = 0.5 * (a + b);
                    let sm = [m, 0.5 * (a + m), 0.5 * (m + b)]
                        .into_iter()
                        .find_map(|p| sign(p).ok().flatten().map(|s| (p, s)));
                    let Some((p, sp)) = sm else { break };
                    if sp == ps {
                        a = p;
                    } else {
                        b = p;
                    }
                }
                out.push(Bracket { lo: a, hi: b });
            }
        }
        prev = Some((w, s));
    }
    Ok(out)
}

/// `n` equally spaced interior points of `(lo, hi)`.
pub fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n as f64 + 1.0);
    (1..=n).map(move |i| lo + step * i as f64)
}

fn c(s: &str) -> PiExpr {
    parse_constant(s).expect("suite constant parses")
}

fn bound(name: &str) -> Result<BoundPoly, SuiteError> {
    Ok(catalog::named(name)?)
}

fn b(name: &str) -> Result<Expr, SuiteError> {
    Ok(Expr::Bound(bound(name)?))
}

fn fun(id: FunctionId) -> Expr {
    Expr::function(id)
}

/// How consecutive members of a grid chain compare.
#[derive(Clone, Copy, PartialEq)]
enum Rel {
    Less,
    LessEq,
}

struct Ctx {
    opts: ProveOptions,
    grid_points: usize,
    claims: Vec<ClaimReport>,
    tightness: Vec<Tightness>,
}

impl Ctx {
    fn push_cert(&mut self, kind: &'static str, cert: BoundCert, detail: Option<String>) {
        self.claims.push(ClaimReport {
            kind,
            claim: cert.claim,
            status: cert.status,
            leaf_count: cert.leaf_count,
            max_depth: cert.max_depth,
            witness: cert.witness,
            detail,
        });
    }

    fn record(&mut self, kind: &'static str, claim: String, status: Status, detail: Option<String>) {
        self.claims.push(ClaimReport { kind, claim, status, leaf_count: 0, max_depth: 0, witness: None, detail });
    }

    /// `lhs < rhs` on `(lo, hi)` of `var`.
    fn less(&mut self, lhs: Expr, rhs: Expr, var: Var, lo: &PiExpr, hi: &PiExpr) {
        let claim = Claim::new(lhs, rhs, lo.clone(), hi.clone()).in_var(var);
        match prove_claim(&claim, &self.opts) {
            Ok(cert) => self.push_cert("prove_less", cert, None),
            Err(e) => self.record("prove_less", claim.to_string(), Status::Undecided, Some(e.to_string())),
        }
    }

    fn chain(&mut self, exprs: Vec<Expr>, var: Var, lo: &str, hi: &str) {
        let (lo, hi) = (c(lo), c(hi));
        for pair in exprs.windows(2) {
            self.less(pair[0].clone(), pair[1].clone(), var, &lo, &hi);
        }
    }

    fn poly_positive(&mut self, p: &str, var: Var, lo: &str, hi: &str) -> Result<(), SuiteError> {
        let p = LaurentPoly::parse(p, var)?;
        let cert = prove_poly_positive(&p, c(lo), c(hi), &self.opts)?;
        self.push_cert("poly_positive", cert, None);
        Ok(())
    }

    fn exact(&mut self, claim: impl Into<String>, ok: bool, detail: Option<String>) {
        let status = if ok { Status::Verified } else { Status::Refuted };
        self.record("exact", claim.into(), status, detail);
    }

    /// Checks `e0 rel e1 rel …` at every grid point of `(lo, hi)` in `var`
    /// with certified enclosures.
    fn grid_chain(
        &mut self,
        exprs: &[Expr],
        rels: &[Rel],
        var: Var,
        lo: &PiExpr,
        hi: &PiExpr,
    ) -> Result<(), SuiteError> {
        let mut text = exprs[0].to_string();
        for (r, e) in rels.iter().zip(&exprs[1..]) {
            text += if *r == Rel::Less { " < " } else { " <= " };
            text += &e.to_string();
        }
        let claim = format!("{text} at {} grid points of ({lo}, {hi}) in {var}", self.grid_points);
        let mut status = Status::Verified;
        let mut witness = None;
        let mut open = 0usize;
        'grid: for w in grid(lo.approx(), hi.approx(), self.grid_points) {
            for (i, r) in rels.iter().enumerate() {
                match certify_point(&exprs[i], &exprs[i + 1], var, w)? {
                    Some(true) => {}
                    Some(false) => {
                        status = Status::Refuted;
                        witness = Some(Witness {
                            point: w,
                            lhs: enclose_at(&exprs[i], var, w)?,
                            rhs: enclose_at(&exprs[i + 1], var, w)?,
                        });
                        break 'grid;
                    }
                    None if *r == Rel::LessEq => {}
                    None => {
                        open += 1;
                        status = status.and(Status::Undecided);
                    }
                }
            }
        }
        let detail = (open > 0).then(|| format!("{open} strict comparisons not separated by the enclosures"));
        self.claims.push(ClaimReport { kind: "grid", claim, status, leaf_count: 0, max_depth: 0, witness, detail });
        Ok(())
    }

    /// Compares `new` with `old` as bounds of `target` on `old`'s domain.
    fn tight(&mut self, new: &BoundPoly, old: &BoundPoly) -> Result<(), SuiteError> {
        debug_assert_eq!(new.side, old.side);
        if new.body == old.body {
            return Ok(());
        }
        let var = old.var();
        let (ne, oe) = (Expr::Bound(new.clone()), Expr::Bound(old.clone()));
        let (mut better, mut worse, mut best) = (0, 0, 0.0f64);
        for w in grid(old.domain.lo.approx(), old.domain.hi.approx(), self.grid_points) {
            let d: Interval = enclose_at(&ne, var, w)? - enclose_at(&oe, var, w)?;
            let d = if new.side == Side::Lower { d } else { -d };
            if d.lo > 0.0 {
                better += 1;
            }
            if d.hi < 0.0 {
                worse += 1;
            }
            best = best.max(d.mid());
        }
        let ok = worse == 0 && better * 10 >= self.grid_points * 9;
        self.tightness.push(Tightness {
            new: new.name.clone(),
            old: old.name.clone(),
            side: new.side,
            points: self.grid_points,
            strictly_better: better,
            worse,
            max_improvement: best,
            status: if ok { Status::Verified } else { Status::Refuted },
        });
        Ok(())
    }
}

/// Runs one case with the given parameter overrides.
pub fn run_case(id: &str, params: &Params, cfg: &RunConfig) -> Result<CaseReport, SuiteError> {
    let started = Instant::now();
    let mut ctx =
        Ctx { opts: cfg.prove_options(), grid_points: cfg.grid_points, claims: Vec::new(), tightness: Vec::new() };
    let list = |v: Option<usize>, default: &[usize]| v.map_or_else(|| default.to_vec(), |v| vec![v]);
    let (x, t) = (Var::X, Var::T);
    use FunctionId::{BeckerStarkPhi as Phi, Psi, Sinc, SteckinF as F};
    match id {
        "S1" => ctx.chain(vec![b("S1L")?, fun(Sinc), b("S1U")?], x, "0", "pi/2"),
        "S2" => ctx.chain(vec![b("Q4")?, fun(Sinc), b("R4")?], x, "0", "pi/2"),
        "S3" => ctx.chain(vec![b("Q1")?, fun(F), b("R1")?], t, "0", "pi/2"),
        "S4" => ctx.chain(vec![b("S4L")?, fun(F), b("S4U")?], x, "0", "1"),
        "S5" => {
            ctx.chain(vec![b("S5L")?, fun(Psi)], t, "0", "pi/2 - 0.373");
            ctx.chain(vec![fun(Psi), b("S5U")?], t, "0", "pi/2 - 0.301");
        }
        "S6" => ctx.chain(vec![fun(Phi), b("S6U")?], x, "0", "1.371"),
        "T1" => {
            let k1s = list(params.k1, &[1, 2, 3]);
            let k2s = list(params.k2, &[1, 2, 3]);
            if k1s.contains(&0) || k2s.contains(&0) {
                return Err(SuiteError::Parameter("k1 and k2 must be positive".into()));
            }
            let (lo, hi) = (c("0"), c("pi/2"));
            for &k in &k1s {
                ctx.less(b(&format!("T{}L(sinc)", 4 * k - 2))?, fun(Sinc), x, &lo, &hi);
            }
            for &k in &k2s {
                ctx.less(fun(Sinc), b(&format!("T{}U(sinc)", 4 * k))?, x, &lo, &hi);
            }
            let lower: Vec<Expr> = [2, 6, 10].iter().map(|d| b(&format!("T{d}L(sinc)"))).collect::<Result<_, _>>()?;
            let upper: Vec<Expr> = [8, 4, 0].iter().map(|d| b(&format!("T{d}U(sinc)"))).collect::<Result<_, _>>()?;
            ctx.chain(lower, x, "0", "pi/2");
            ctx.chain(upper, x, "0", "pi/2");
            let (k1, k2) = (*k1s.iter().max().unwrap(), *k2s.iter().max().unwrap());
            ctx.tight(&bound(&format!("T{}L(sinc)", 4 * k1 - 2))?, &bound("S1L")?)?;
            ctx.tight(&bound(&format!("T{}U(sinc)", 4 * k2))?, &bound("S1U")?)?;
        }
        "T2" => {
            ctx.chain(vec![b("Q4")?, b("T6L(sinc)")?, fun(Sinc), b("T4U(sinc)")?, b("R4")?], x, "0", "pi/2");
            ctx.poly_positive("(1/120 + 8/pi^5)*x^4 - x^6/5040", x, "0", "pi/2")?;
            ctx.poly_positive("(-16/pi^4 + 40/pi^5)*x^4 - 5/(2*pi) + 1", x, "0", "pi/2")?;
            ctx.tight(&bound("T6L(sinc)")?, &bound("Q4")?)?;
            ctx.tight(&bound("T4U(sinc)")?, &bound("R4")?)?;
        }
        "T3" => {
            let ns = list(params.n, &[1, 2, 3, 4, 5]);
            for n in ns {
                ctx.chain(vec![b(&format!("F{n}L"))?, fun(F), b(&format!("F{n}U"))?], t, "0", "pi/2");
            }
        }
        "T4" => {
            let ls = list(params.l, &[1, 2, 3]);
            for &l in &ls {
                if l == 0 {
                    return Err(SuiteError::Parameter("l must be positive".into()));
                }
                let lower = b(&format!("T{}L(f)", 2 * l))?;
                let upper = b(&format!("T{}U(f)", 2 * l - 1))?;
                ctx.chain(vec![lower, fun(F), upper], x, "0", "1");
            }
            if ls.contains(&1) {
                for (name, printed) in [("T2L(f)", "S4L"), ("T1U(f)", "S4U")] {
                    let same = bound(name)?.body == bound(printed)?.body;
                    ctx.exact(format!("{name} == {printed}"), same, None);
                }
            }
            alpha_checks(&mut ctx, 200);
            if ls.contains(&2) {
                ctx.tight(&bound("T4L(f)")?, &bound("S4L")?)?;
                ctx.tight(&bound("T3U(f)")?, &bound("S4U")?)?;
            }
        }
        "T5" => {
            ctx.chain(vec![b("T4L(psi)")?, fun(Psi), b("T5U(psi)")?], t, "0", "pi/2");
            let (lo, hi) = (c("0"), c("pi/2"));
            for (name, sign) in [("T4L(psi)", ClaimedSign::Positive), ("T5U(psi)", ClaimedSign::Negative)] {
                let e = becker_stark_mixed(&bound(name)?.body.poly);
                let cert = mixed_trig_sign(&e, lo.clone(), hi.clone(), sign, &ctx.opts)?;
                ctx.push_cert("mixed_trig", cert, Some(format!("polynomial part {name}")));
            }
            psi_printed_checks(&mut ctx);
            ctx.tight(&bound("T4L(psi)")?, &bound("S5L")?)?;
            ctx.tight(&bound("T5U(psi)")?, &bound("S5U")?)?;
        }
        "T6" => {
            let m1 = params.m1.unwrap_or(2);
            let m2 = params.m2.unwrap_or(3);
            let cs = params.c.clone().unwrap_or_else(|| "1.371".into());
            let cv = parse_constant(&cs).map_err(|e| SuiteError::Parameter(format!("c = {cs}: {}", e.msg)))?;
            let half = PiExpr::half_pi();
            if cv.sign() != Sign::Positive || cv.cmp_value(&half).is_ge() {
                return Err(SuiteError::Parameter(format!("c = {cs} is not in (0, pi/2)")));
            }
            let zero = PiExpr::zero();
            ctx.less(b(&format!("WD{m1}(phi,{cs})"))?, fun(Phi), x, &zero, &cv);
            ctx.less(fun(Phi), b(&format!("T{m2}U(phi)"))?, x, &zero, &cv);
            let first = becker_stark_C(1);
            ctx.exact(
                "C_1 = pi^2 > 0",
                first == PiExpr::pi_pow(2),
                Some("exception: the negative sign pattern starts at k = 2".into()),
            );
            let bad: Vec<usize> = (2..=100).filter(|&k| becker_stark_C(k).sign() != Sign::Negative).collect();
            ctx.exact("C_k < 0 for 2 <= k <= 100", bad.is_empty(), fail_list(&bad));
            if m2 != 3 {
                ctx.tight(&bound(&format!("T{m2}U(phi)"))?, &bound("S6U")?)?;
            }
        }
        "C1.1" => {
            ctx.chain(vec![b("Q1")?, b("F1L")?, fun(F), b("F1U")?], t, "0", "pi/2");
            let same = bound("F1U")?.body == bound("R1")?.body;
            ctx.exact("F1U == R1", same, None);
            ctx.tight(&bound("F1L")?, &bound("Q1")?)?;
        }
        "C1.2" => {
            let chain = vec![b("Q1")?, b("F1L")?, b("F3L")?, fun(F), b("F3U")?, b("F1U")?];
            ctx.chain(chain.clone(), t, "0", "pi/2");
            use Rel::{Less, LessEq};
            ctx.grid_chain(&chain[1..], &[LessEq, Less, Less, LessEq], t, &c("0"), &c("pi/2"))?;
            ctx.tight(&bound("F3L")?, &bound("Q1")?)?;
            ctx.tight(&bound("F3U")?, &bound("R1")?)?;
        }
        "CONJ1a" => {
            let m = params.big_m.unwrap_or(40);
            let bad: Vec<usize> = (0..=m).filter(|&k| psi_coeff_product(k) != psi_coeff_conjecture(k)).collect();
            let detail = fail_list(&bad).or_else(|| Some(format!("{} coefficients equal", m + 1)));
            ctx.exact(format!("psi_product(m) == psi_conjecture(m) for 0 <= m <= {m}"), bad.is_empty(), detail);
        }
        "CONJ1b" => {
            let ls = list(params.l, &[1, 2, 3, 4, 5]);
            for l in ls {
                let chain = [b(&format!("T{}L(psi)", 2 * l))?, fun(Psi), b(&format!("T{}U(psi)", 2 * l + 1))?];
                ctx.grid_chain(&chain, &[Rel::Less, Rel::Less], t, &c("0"), &c("pi/2"))?;
            }
        }
        "LIM-steckin" => limit_checks(&mut ctx)?,
        "JORDAN-2" => ctx.chain(vec![b("J2L")?, fun(Sinc), b("J2U")?], x, "0", "pi/2"),
        "JORDAN-3" => ctx.chain(vec![b("J3L")?, fun(Sinc), b("J3U")?], x, "0", "pi/2"),
        "CROSS-S5L" => crossing(&mut ctx, b("S5L")?, fun(Psi), Var::T, 0.373)?,
        "CROSS-S5R" => crossing(&mut ctx, fun(Psi), b("S5U")?, Var::T, 0.301)?,
        "CROSS-S6" => crossing(&mut ctx, fun(Phi), b("S6U")?, Var::X, 1.371)?,
        _ => return Err(SuiteError::UnknownCase(id.to_string())),
    }
    let status = ctx
        .claims
        .iter()
        .map(|c| c.status)
        .chain(ctx.tightness.iter().map(|t| t.status))
        .fold(Status::Verified, Status::and);
    Ok(CaseReport {
        id: id.to_string(),
        status,
        params: params.clone(),
        claims: ctx.claims,
        tightness: ctx.tightness,
        elapsed_ms: cfg.timings.then(|| started.elapsed().as_millis() as u64),
    })
}

fn fail_list(bad: &[usize]) -> Option<String> {
    (!bad.is_empty()).then(|| format!("fails at k = {bad:?}"))
}

/// Sign pattern and decay of the Steckin series coefficients.
fn alpha_checks(ctx: &mut Ctx, kmax: usize) {
    let alpha: Vec<PiExpr> = (1..=kmax).map(steckin_alpha).collect();
    let bad: Vec<usize> = (1..=kmax)
        .filter(|&k| {
            let want = if k % 2 == 0 { Sign::Negative } else { Sign::Positive };
            alpha[k - 1].sign() != want
        })
        .collect();
    ctx.exact(format!("alpha_k < 0 for even k, alpha_k > 0 for odd k, k <= {kmax}"), bad.is_empty(), fail_list(&bad));
    let abs = |e: &PiExpr| if e.sign() == Sign::Negative { -e } else { e.clone() };
    let bad: Vec<usize> =
        (1..kmax).filter(|&k| (&abs(&alpha[k - 1]) - &abs(&alpha[k])).sign() != Sign::Positive).collect();
    ctx.exact(format!("|alpha_k| > |alpha_(k+1)| for k < {kmax}"), bad.is_empty(), fail_list(&bad));
}

/// The six low-order coefficients of the psi series in closed form.
pub const PSI_PRINTED: [&str; 6] = [
    "8",
    "8/pi",
    "16/pi^2 - 8/3",
    "32/pi^3 - 8/(3*pi)",
    "64/pi^4 - 16/(3*pi^2) - 8/45",
    "128/pi^5 - 32/(3*pi^3) - 8/(45*pi)",
];

fn psi_printed_checks(ctx: &mut Ctx) {
    for (m, s) in PSI_PRINTED.iter().enumerate() {
        let want = c(s);
        let ok = psi_coeff_product(m) == want && psi_coeff_conjecture(m) == want;
        ctx.exact(format!("psi coefficient {m} == {s}"), ok, None);
    }
}

/// Residual of the Steckin remainder against its limit 2/π at distance `t` from π/2.
fn steckin_residual(t: f64) -> Result<Interval, SuiteError> {
    let two_over_pi = c("2/pi").enclose();
    Ok(enclose_at(&fun(FunctionId::SteckinF), Var::T, t)? - two_over_pi)
}

fn limit_checks(ctx: &mut Ctx) -> Result<(), SuiteError> {
    let limit = FunctionId::SteckinF.value_at_half_pi();
    ctx.exact("f(x) -> 2/pi as x -> pi/2", limit == Some(c("2/pi")), None);

    // the residual decays linearly, with slope -1/3 (the slope of R1)
    let ts: Vec<f64> = (2..=8).map(|k| 10f64.powi(-k)).collect();
    let mut ok = true;
    for &t in &ts {
        let r = steckin_residual(t)? / Interval::point(t);
        ok &= r.lo > -0.34 && r.hi < -0.33;
    }
    ctx.exact("(f(pi/2 - t) - 2/pi)/t in (-0.34, -0.33) for t = 1e-2, ..., 1e-8", ok, None);

    let r = steckin_residual(1e-5)?;
    let status = if r.mag() < 1e-9 {
        Status::Verified
    } else if r.mig() > 1e-9 {
        Status::Refuted
    } else {
        Status::Undecided
    };
    ctx.record("limit", "|f(pi/2 - 1e-5) - 2/pi| < 1e-9".into(), status, Some(format!("residual in {r}")));
    Ok(())
}

/// Looks for the crossing of `lhs < rhs` expected near `x = printed`.
fn crossing(ctx: &mut Ctx, lhs: Expr, rhs: Expr, var: Var, printed: f64) -> Result<(), SuiteError> {
    const TOL: f64 = 1e-6;
    let hp = std::f64::consts::FRAC_PI_2;
    let samples = ctx.grid_points.max(2);
    let to_x = |w: f64| if var == Var::T { hp - w } else { w };
    let brackets = find_crossing(&lhs, &rhs, var, (0.0, hp), samples, TOL)?;
    let mut xs: Vec<(f64, f64)> = brackets
        .iter()
        .map(|b| {
            let (a, z) = (to_x(b.lo), to_x(b.hi));
            (a.min(z), a.max(z))
        })
        .collect();
    xs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let hit = xs.iter().any(|&(a, z)| a <= printed + 1e-3 && z >= printed - 1e-3);

    // where the two sides come closest on the search grid
    let mut closest = (f64::INFINITY, 0.0);
    for w in grid(0.0, hp, samples) {
        let d = (enclose_at(&rhs, var, w)? - enclose_at(&lhs, var, w)?).mid();
        if d < closest.0 {
            closest = (d, to_x(w));
        }
    }
    let mut detail = if xs.is_empty() {
        format!(
            "no sign change of rhs - lhs found for x in (0, pi/2); smallest gap on the grid about {:.3e} at x = {:.4}",
            closest.0, closest.1
        )
    } else {
        format!("brackets in x: {xs:?}")
    };
    let (lo, hi) = (PiExpr::zero(), PiExpr::half_pi());
    let whole = prove_claim(&Claim::new(lhs.clone(), rhs.clone(), lo, hi).in_var(var), &ctx.opts)?;
    let status = if hit {
        Status::Verified
    } else if whole.is_verified() {
        detail += "; the inequality is certified on all of (0, pi/2), so no crossing exists";
        Status::Refuted
    } else {
        Status::Undecided
    };
    ctx.record(
        "crossing",
        format!("{lhs} = {rhs} at some x in [{:.3}, {:.3}]", printed - 1e-3, printed + 1e-3),
        status,
        Some(detail),
    );
    ctx.push_cert("prove_less", whole, None);
    Ok(())
}

/// Runs every case selected by `filter`, concurrently, in catalog order.
pub fn run_all(filter: Option<&str>, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let ids = select(filter)?;
    let params = Params::default();
    let cases = ids.par_iter().map(|id| run_case(id, &params, cfg)).collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new(cfg, cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_select_by_glob() {
        assert_eq!(select(Some("CONJ*")).unwrap(), vec!["CONJ1a", "CONJ1b"]);
        assert_eq!(select(Some("T5")).unwrap(), vec!["T5"]);
        assert!(select(Some("nothing-like-this")).unwrap().is_empty());
        assert_eq!(select(None).unwrap().len(), CASES.len());
        assert_eq!(select(Some("S1, S2")).unwrap(), vec!["S1", "S2"]);
    }

    #[test]
    fn grid_is_interior() {
        let g: Vec<f64> = grid(0.0, 1.0, 4).collect();
        assert_eq!(g, vec![0.2, 0.4, 0.6000000000000001, 0.8]);
    }

    #[test]
    fn crossing_of_a_line() {
        let lhs = Expr::parse("x", Var::X).unwrap();
        let rhs = Expr::parse("1/2", Var::X).unwrap();
        let br = find_crossing(&lhs, &rhs, Var::X, (0.0, 1.0), 10, 1e-8).unwrap();
        assert_eq!(br.len(), 1);
        assert!(br[0].lo <= 0.5 && 0.5 <= br[0].hi && br[0].hi - br[0].lo <= 1e-8);
        assert!(find_crossing(&lhs, &rhs, Var::X, (0.6, 1.0), 10, 1e-8).unwrap().is_empty());
    }

    #[test]
    fn unknown_case() {
        assert!(matches!(run_case("T9", &Params::default(), &RunConfig::default()), Err(SuiteError::UnknownCase(_))));
    }

    #[test]
    fn classical_sinc_case() {
        let r = run_case("S1", &Params::default(), &RunConfig::default()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.claims.len(), 2);
    }
}
