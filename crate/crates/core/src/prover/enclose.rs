//! Range enclosures of the target functions over intervals.
//!
//! Every kernel is evaluated from the pair `(u, t)` of coordinates of the
//! same point set (`u = x`, `t = π/2 − x`), so each one can pick the form
//! without cancellation on its side of the interval.

use thiserror::Error;

use crate::approx::{FunctionId, FunctionSpec, Var};
use crate::exact::elementary::{cos_range, h_range, sin_range, sinc_range};
use crate::exact::pi::{half_pi, pi};
use crate::exact::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("domain error: {0}")]
pub struct DomainError(pub String);

/// Functions of the coordinate `x`. The second group is the first composed
/// with `x ↦ π/2 − x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kernel {
    Sinc,
    Tan,
    F,
    Phi,
    SincRefl,
    Cot,
    G,
    Psi,
}

impl Kernel {
    /// `K(π/2 − x) = K.reflect()(x)`.
    pub fn reflect(self) -> Kernel {
        use Kernel::*;
        match self {
            Sinc => SincRefl,
            SincRefl => Sinc,
            Tan => Cot,
            Cot => Tan,
            F => G,
            G => F,
            Phi => Psi,
            Psi => Phi,
        }
    }

    pub fn is_reflected(self) -> bool {
        matches!(self, Kernel::SincRefl | Kernel::Cot | Kernel::G | Kernel::Psi)
    }

    /// The kernel computing `id` as a function of `x`, whatever the natural
    /// variable of `id` is.
    pub fn of(id: FunctionId) -> Kernel {
        match id {
            FunctionId::Sinc => Kernel::Sinc,
            FunctionId::Tan | FunctionId::Cot => Kernel::Tan,
            FunctionId::SteckinF => Kernel::F,
            FunctionId::BeckerStarkPhi | FunctionId::Psi => Kernel::Phi,
        }
    }

    /// The function whose natural-variable series at 0 is this kernel's series at `x = 0`.
    pub fn series_function(self) -> Option<FunctionId> {
        match self {
            Kernel::Sinc => Some(FunctionId::Sinc),
            Kernel::Tan => Some(FunctionId::Tan),
            Kernel::F => Some(FunctionId::SteckinF),
            Kernel::Phi => Some(FunctionId::BeckerStarkPhi),
            Kernel::Cot => Some(FunctionId::Cot),
            Kernel::Psi => Some(FunctionId::Psi),
            Kernel::SincRefl | Kernel::G => None,
        }
    }
}

fn nonneg(iv: Interval) -> Interval {
    Interval::new(iv.lo.max(0.0), iv.hi.max(0.0))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), DomainError> {
    if cond {
        Ok(())
    } else {
        Err(DomainError(msg()))
    }
}

/// Splits the point set at `u = at` and hulls the two evaluations.
fn split_u(
    u: Interval,
    t: Interval,
    at: f64,
    f: impl Fn(Interval, Interval) -> Result<Interval, DomainError>,
) -> Result<Interval, DomainError> {
    let u1 = Interval::new(u.lo, at);
    let u2 = Interval::new(at, u.hi);
    let t_at = nonneg(half_pi() - Interval::point(at));
    let t1 = Interval::new(t_at.lo, t.hi);
    let t2 = Interval::new(t.lo, t_at.hi);
    Ok(f(u1, t1)?.hull(&f(u2, t2)?))
}

fn tan_ut(u: Interval, t: Interval) -> Result<Interval, DomainError> {
    check(t.lo > 0.0, || "tan is singular at pi/2".into())?;
    if u.hi <= 0.785 {
        Ok(sin_range(u) / cos_range(u))
    } else if u.lo >= 0.785 {
        Ok(cos_range(t) / sin_range(t))
    } else {
        split_u(u, t, 0.785, tan_ut)
    }
}

fn f_ut(u: Interval, t: Interval) -> Result<Interval, DomainError> {
    let two_over_pi = Interval::point(2.0) / pi();
    if u.hi <= 0.6 {
        Ok(tan_ut(u, t)? - two_over_pi * u / t)
    } else if u.lo >= 0.6 {
        Ok(two_over_pi - t * h_range(t) / sinc_range(t))
    } else {
        split_u(u, t, 0.6, f_ut)
    }
}

fn phi_ut(u: Interval, t: Interval) -> Result<Interval, DomainError> {
    let p = pi();
    if u.hi <= 1.0 {
        Ok((p.sqr() - Interval::point(4.0) * u.sqr()) * sinc_range(u) / cos_range(u))
    } else if u.lo >= 1.0 {
        Ok(Interval::point(4.0) * (p - t) * cos_range(t) / (u * sinc_range(t)))
    } else {
        split_u(u, t, 1.0, phi_ut)
    }
}

/// Enclosure of a kernel over the points with coordinates `u = x ∈ U`,
/// `t = π/2 − x ∈ T`.
pub fn enclose_kernel_ut(k: Kernel, u: Interval, t: Interval) -> Result<Interval, DomainError> {
    if k.is_reflected() {
        return enclose_kernel_ut(k.reflect(), t, u);
    }
    match k {
        Kernel::Sinc => {
            check(u.mag() <= 433.0 / 125.0, || format!("sinc argument {u} outside its domain"))?;
            Ok(sinc_range(u.abs()))
        }
        _ => {
            check(u.lo >= 0.0 && t.lo >= 0.0, || format!("argument {u} outside [0, pi/2]"))?;
            match k {
                Kernel::Tan => tan_ut(u, t),
                Kernel::F => f_ut(u, t),
                Kernel::Phi => phi_ut(u, t),
                _ => unreachable!(),
            }
        }
    }
}

/// The coordinate pair for points given by their `x` coordinate.
pub fn coords_from_x(x: Interval) -> (Interval, Interval) {
    let t = half_pi() - x;
    // points with x ≤ π/2 have t ≥ 0; rounding can only push the bound below 0
    let t = if x.hi <= half_pi().lo { nonneg(t) } else { t };
    (x, t)
}

/// Enclosure of kernel `k` over points with `x ∈ X`.
pub fn enclose_kernel(k: Kernel, x: Interval) -> Result<Interval, DomainError> {
    let (u, t) = coords_from_x(x);
    enclose_kernel_ut(k, u, t)
}

/// Enclosure of `spec` over `iv`, given in the function's natural variable.
///
/// At the finite endpoints (`f` and `phi` at π/2, `psi` at 0) the function is
/// taken to be its one-sided limit.
pub fn enclose(spec: impl Into<FunctionSpec>, iv: Interval) -> Result<Interval, DomainError> {
    let id = spec.into().id;
    if iv.is_empty() {
        return Err(DomainError("empty interval".into()));
    }
    let dom = id.domain().enclose();
    check(iv.lo >= 0.0 && iv.hi <= dom.hi, || format!("{iv} is outside the domain of {id}"))?;
    let k = Kernel::of(id);
    let (u, t) = match id.natural_var() {
        Var::X => (iv, nonneg(half_pi() - iv)),
        Var::T => (nonneg(half_pi() - iv), iv),
    };
    enclose_kernel_ut(k, u, t)
}
