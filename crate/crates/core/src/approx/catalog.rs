//! Named bounds: the fixed polynomials of the classical inequalities and
//! their improvements, plus a name grammar for the parametric families.
//!
//! Parametric names:
//! `T{n}L(fn)` / `T{n}U(fn)` (Taylor truncations and series partial sums),
//! `F{n}L` / `F{n}U` (Stečkin remainder bounds in t),
//! `WD{n}(fn)` or `WD{n}(fn,b)` (two-point lower bound on (0, b), b = π/2 by default).

use super::{
    partial_sum_bounds, steckin_bounds, taylor_bound, wd_lower_two_point, ApproxError, BoundPoly, Domain, FunctionId,
    LaurentPoly, Side, Var,
};
use crate::exact::{parse_constant, PiExpr};
use crate::series::SeriesId;

struct Entry {
    name: &'static str,
    target: FunctionId,
    side: Side,
    var: Var,
    expr: &'static str,
    lo: &'static str,
    hi: &'static str,
}

const fn entry(
    name: &'static str,
    target: FunctionId,
    side: Side,
    var: Var,
    expr: &'static str,
    lo: &'static str,
    hi: &'static str,
) -> Entry {
    Entry { name, target, side, var, expr, lo, hi }
}

use FunctionId::{BeckerStarkPhi as Phi, Sinc, SteckinF as F};
use Side::{Lower, Upper};
use Var::{T, X};

const FIXED: &[Entry] = &[
    entry("S1L", Sinc, Lower, X, "1 - x^2/6", "0", "pi/2"),
    entry("S1U", Sinc, Upper, X, "1 - x^2/6 + x^4/120", "0", "pi/2"),
    entry("Q4", Sinc, Lower, X, "1 - x^2/6 - 8/pi^5*x^4", "0", "pi/2"),
    entry("R4", Sinc, Upper, X, "2 - 5/(2*pi) - x^2/6 + (-16/pi^4 + 40/pi^5 + 1/120)*x^4", "0", "pi/2"),
    entry("Q1", F, Lower, T, "2/pi - t/2", "0", "pi/2"),
    entry("R1", F, Upper, T, "2/pi - t/3", "0", "pi/2"),
    entry("S4L", F, Lower, X, "(1 - 4/pi^2)*x - 8/pi^3*x^2", "0", "1"),
    entry("S4U", F, Upper, X, "(1 - 4/pi^2)*x", "0", "1"),
    entry("S5L", Phi, Lower, T, "8 + 8/pi*t + (16/pi^2 - 8/3)*t^2", "0", "pi/2 - 0.373"),
    entry("S5U", Phi, Upper, T, "8 + 8/pi*t + (16/pi^2 - 8/3)*t^2 + (32/pi^3 - 8/(3*pi))*t^3", "0", "pi/2 - 0.301"),
    entry("S6U", Phi, Upper, X, "pi^2 - (4 - pi^2/3)*x^2 - (4/3 - 2/15*pi^2)*x^4", "0", "1.371"),
    entry("J1", Sinc, Lower, X, "2/pi", "0", "pi/2"),
    entry("J2L", Sinc, Lower, X, "2/pi + (pi^2 - 4*x^2)/pi^3", "0", "pi/2"),
    entry("J2U", Sinc, Upper, X, "2/pi + (pi - 2)*(pi^2 - 4*x^2)/pi^3", "0", "pi/2"),
    entry("J3L", Sinc, Lower, X, "2/pi + (pi^4 - 16*x^4)/(2*pi^5)", "0", "pi/2"),
    entry("J3U", Sinc, Upper, X, "2/pi + (pi - 2)*(pi^4 - 16*x^4)/pi^5", "0", "pi/2"),
];

/// Aliases for the fixed bounds that coincide with a parametric construction.
const ALIASES: &[(&str, &str)] = &[("S3L", "Q1"), ("S3U", "R1"), ("S2L", "Q4"), ("S2U", "R4")];

/// Names of the fixed catalog entries (aliases included).
pub fn fixed_names() -> Vec<&'static str> {
    FIXED.iter().map(|e| e.name).chain(ALIASES.iter().map(|(a, _)| *a)).collect()
}

fn build(e: &Entry) -> BoundPoly {
    let c = |s: &str| parse_constant(s).expect("catalog constant parses");
    BoundPoly {
        name: e.name.to_string(),
        target: e.target,
        side: e.side,
        domain: Domain::new(c(e.lo), c(e.hi)),
        body: LaurentPoly::parse(e.expr, e.var).expect("catalog polynomial parses"),
    }
}

fn bad(name: &str) -> ApproxError {
    ApproxError::Parse(format!("unknown bound name '{name}'"))
}

fn parse_index(s: &str, name: &str) -> Result<usize, ApproxError> {
    s.parse().map_err(|_| bad(name))
}

/// Looks up a fixed bound or builds a parametric one.
pub fn named(name: &str) -> Result<BoundPoly, ApproxError> {
    let name = name.trim();
    let key = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, target)| *target);
    if let Some(e) = FIXED.iter().find(|e| e.name == key) {
        let mut b = build(e);
        b.name = name.to_string();
        return Ok(b);
    }
    if let Some(rest) = name.strip_prefix("WD") {
        let (n, args) = rest.split_once('(').ok_or_else(|| bad(name))?;
        let args = args.strip_suffix(')').ok_or_else(|| bad(name))?;
        let n = parse_index(n, name)?;
        let (fname, b) = match args.split_once(',') {
            Some((f, b)) => (f.trim(), parse_constant(b.trim()).map_err(|e| ApproxError::Parse(e.msg))?),
            None => (args.trim(), PiExpr::half_pi()),
        };
        let id: FunctionId = fname.parse()?;
        return wd_lower_two_point(id, n, &PiExpr::zero(), &b);
    }
    if let Some(rest) = name.strip_prefix('F') {
        let (n, side) = rest.split_at(rest.len().saturating_sub(1));
        let n = parse_index(n, name)?;
        let (lower, upper) = steckin_bounds(n)?;
        return match side {
            "L" => Ok(lower),
            "U" => Ok(upper),
            _ => Err(bad(name)),
        };
    }
    if let Some(rest) = name.strip_prefix('T') {
        let (head, fname) = rest.split_once('(').ok_or_else(|| bad(name))?;
        let fname = fname.strip_suffix(')').ok_or_else(|| bad(name))?;
        let (n, side) = head.split_at(head.len().saturating_sub(1));
        let n = parse_index(n, name)?;
        let side = match side {
            "L" => Side::Lower,
            "U" => Side::Upper,
            _ => return Err(bad(name)),
        };
        let id: FunctionId = fname.trim().parse()?;
        let b = match id {
            FunctionId::Sinc | FunctionId::Tan | FunctionId::Cot => taylor_bound(id, n)?,
            FunctionId::SteckinF | FunctionId::Psi => {
                let series = if id == FunctionId::Psi { SeriesId::PsiProduct } else { SeriesId::SteckinAlpha };
                // lower bounds sit at even indices for f and psi; upper at odd
                let (l, k) = match (id, n % 2) {
                    (FunctionId::SteckinF, 0) => (n / 2, 0),
                    (FunctionId::SteckinF, _) => (n.div_ceil(2), 1),
                    (_, 0) => (n / 2, 0),
                    _ => (n / 2, 1),
                };
                if l == 0 {
                    return Err(bad(name));
                }
                let (lo, up) = partial_sum_bounds(series, l)?;
                if k == 0 { lo } else { up }.ok_or_else(|| bad(name))?
            }
            FunctionId::BeckerStarkPhi => {
                if n == 0 {
                    return Err(bad(name));
                }
                partial_sum_bounds(SeriesId::BeckerStarkC, n)?.1.ok_or_else(|| bad(name))?
            }
        };
        if b.side != side {
            return Err(ApproxError::Unsupported(format!(
                "{name}: the degree-{n} truncation of {id} is a {} bound",
                b.side
            )));
        }
        return Ok(b);
    }
    Err(bad(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::taylor_bound;

    #[test]
    fn fixed_entries_parse() {
        for n in fixed_names() {
            let b = named(n).unwrap();
            assert_eq!(b.name, n);
        }
    }

    #[test]
    fn classical_forms_simplify_to_the_expanded_ones() {
        // S1L reduces to 1 − x²/6 and S1U to the degree-4 Taylor upper bound.
        let lhs = LaurentPoly::parse("2/pi + (pi^2 - 4*x^2)/pi^3 + (1 - 3/pi) - (1/6 - 4/pi^3)*x^2", X).unwrap();
        assert_eq!(lhs, named("S1L").unwrap().body);
        assert_eq!(named("S1U").unwrap().body, taylor_bound(Sinc, 4).unwrap().body);
        let q4 = LaurentPoly::parse("2/pi + (pi^4 - 16*x^4)/(2*pi^5) + (1 - 5/(2*pi)) - x^2/6", X).unwrap();
        assert_eq!(q4, named("Q4").unwrap().body);
        let r4 = LaurentPoly::parse(
            "2/pi + (pi - 2)*(pi^4 - 16*x^4)/pi^5 + (1 - 5/(2*pi)) - x^2/6 + (8/pi^5 + 1/120)*x^4",
            X,
        )
        .unwrap();
        assert_eq!(r4, named("R4").unwrap().body);
    }

    #[test]
    fn parametric_names() {
        assert_eq!(named("T2L(sinc)").unwrap().body, named("S1L").unwrap().body);
        assert_eq!(named("F1U").unwrap().body, named("R1").unwrap().body);
        assert_eq!(named("T2L(f)").unwrap().body, named("S4L").unwrap().body);
        assert_eq!(named("T1U(f)").unwrap().body, named("S4U").unwrap().body);
        assert_eq!(named("T3U(phi)").unwrap().body, named("S6U").unwrap().body);
        assert_eq!(named("T2L(psi)").unwrap().body, named("S5L").unwrap().body);
        assert_eq!(named("T3U(psi)").unwrap().body, named("S5U").unwrap().body);
        assert_eq!(named("WD1(cot)").unwrap().side, Side::Lower);
        assert!(named("WD2(phi, 1.371)").unwrap().body.extra.is_some());
        assert!(named("T2U(sinc)").is_err());
        assert!(named("nonsense").is_err());
    }
}
