//! Exact rationals, Laurent polynomials in π and outward-rounded intervals.

pub mod elementary;
pub mod interval;
pub mod parse;
pub mod pi;
pub mod piexpr;
pub mod pipoly;

pub use interval::Interval;
pub use num_rational::BigRational;
pub use parse::{parse_constant, parse_laurent, Laurent, ParseError};
pub use pi::{pi_enclosure, pi_rational_bounds};
pub use piexpr::{rat, PiExpr, Sign};
pub use pipoly::PiPoly;

/// Enclosure of `e` for the given enclosure of π.
pub fn pi_expr_eval(e: &PiExpr, pi: Interval) -> Interval {
    e.eval(pi)
}

/// Exact sign of `e`.
pub fn pi_expr_sign(e: &PiExpr) -> Sign {
    e.sign()
}
