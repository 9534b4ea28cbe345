//! Rigorous enclosures of sin, cos, sinc and h(t) = (sin t − t cos t)/t³.
//!
//! Series are summed in interval arithmetic and closed with a Lagrange
//! remainder bound, so any argument interval with |x| ≤ 4 is accepted.
//! The `*_range` functions use monotonicity on [0, π/2] (sinc on [0, π])
//! to keep the result tight for wide arguments.

use super::interval::Interval;
use super::pi::{half_pi, pi};

const TERM_FLOOR: f64 = 1e-21;
const MAX_ARG: f64 = 4.0;

fn div_int(x: Interval, n: u64) -> Interval {
    x / Interval::point(n as f64)
}

fn symmetric(m: f64) -> Interval {
    Interval::new(-m, m)
}

/// sin x by its Taylor series.
pub fn sin_series(x: Interval) -> Interval {
    debug_assert!(x.mag() <= MAX_ARG);
    let x2 = x.sqr();
    let mut term = x;
    let mut sum = x;
    let mut k = 1u64;
    loop {
        term = div_int(term * x2, (2 * k) * (2 * k + 1));
        if term.mag() < TERM_FLOOR {
            return sum + symmetric(term.mag());
        }
        sum = if k % 2 == 1 { sum - term } else { sum + term };
        k += 1;
    }
}

/// cos x by its Taylor series.
pub fn cos_series(x: Interval) -> Interval {
    debug_assert!(x.mag() <= MAX_ARG);
    let x2 = x.sqr();
    let mut term = Interval::ONE;
    let mut sum = Interval::ONE;
    let mut k = 1u64;
    loop {
        term = div_int(term * x2, (2 * k - 1) * (2 * k));
        if term.mag() < TERM_FLOOR {
            return sum + symmetric(term.mag());
        }
        sum = if k % 2 == 1 { sum - term } else { sum + term };
        k += 1;
    }
}

/// sin x / x, with value 1 at 0.
pub fn sinc_series(x: Interval) -> Interval {
    debug_assert!(x.mag() <= MAX_ARG);
    let x2 = x.sqr();
    let mut term = Interval::ONE;
    let mut sum = Interval::ONE;
    let mut k = 1u64;
    loop {
        term = div_int(term * x2, (2 * k) * (2 * k + 1));
        if term.mag() < TERM_FLOOR {
            return sum + symmetric(term.mag());
        }
        sum = if k % 2 == 1 { sum - term } else { sum + term };
        k += 1;
    }
}

/// h(t) = (sin t − t cos t)/t³ = Σ_j (−1)^j (2j+2)/(2j+3)! t^{2j}, with h(0) = 1/3.
pub fn h_series(t: Interval) -> Interval {
    debug_assert!(t.mag() <= MAX_ARG);
    let t2 = t.sqr();
    let m = t.mag();
    // base_j = t^{2j}/(2j+3)!
    let mut base = Interval::ONE / Interval::point(6.0);
    let mut sum = base * Interval::point(2.0);
    let mut j = 1u64;
    loop {
        base = div_int(base * t2, (2 * j + 2) * (2 * j + 3));
        let term = base * Interval::point((2 * j + 2) as f64);
        if term.mag() < TERM_FLOOR {
            // Lagrange bound for sin t − t cos t after degree 2j + 1, divided by t³
            let bound = base.mag() * ((2 * j + 4) as f64 + m);
            return sum + symmetric(bound);
        }
        sum = if j % 2 == 1 { sum - term } else { sum + term };
        j += 1;
    }
}

/// sin at a narrow argument, switching to cos(π/2 − x) above π/4.
pub fn sin_point(x: Interval) -> Interval {
    if x.hi <= 0.785 {
        sin_series(x)
    } else {
        cos_series(half_pi() - x)
    }
}

/// cos at a narrow argument, switching to sin(π/2 − x) above π/4.
pub fn cos_point(x: Interval) -> Interval {
    if x.hi <= 0.785 {
        cos_series(x)
    } else {
        sin_series(half_pi() - x)
    }
}

fn clamp(iv: Interval, lo: f64, hi: f64) -> Interval {
    Interval::new(iv.lo.max(lo).min(hi), iv.hi.min(hi).max(lo))
}

/// sin over X ⊂ [0, π/2], increasing there.
pub fn sin_range(x: Interval) -> Interval {
    let lo = sin_point(Interval::point(x.lo)).lo;
    let hi = sin_point(Interval::point(x.hi)).hi;
    clamp(Interval::new(lo, hi), -1.0, 1.0)
}

/// cos over X ⊂ [0, π/2], decreasing there.
pub fn cos_range(x: Interval) -> Interval {
    let lo = cos_point(Interval::point(x.hi)).lo;
    let hi = cos_point(Interval::point(x.lo)).hi;
    clamp(Interval::new(lo, hi), -1.0, 1.0)
}

/// sinc over X ⊂ [0, 4]; monotone bracket on [0, π].
pub fn sinc_range(x: Interval) -> Interval {
    if x.hi < pi().lo {
        let lo = sinc_series(Interval::point(x.hi)).lo;
        let hi = sinc_series(Interval::point(x.lo)).hi;
        Interval::new(lo, hi.min(1.0))
    } else {
        sinc_series(x)
    }
}

/// h over T ⊂ [0, π/2], decreasing there.
pub fn h_range(t: Interval) -> Interval {
    let lo = h_series(Interval::point(t.hi)).lo;
    let hi = h_series(Interval::point(t.lo)).hi;
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 30-digit reference values
    const SIN_1: f64 = 0.841470984807896506652502321630;
    const COS_1: f64 = 0.540302305868139717400936607443;
    const SINC_HALF_PI: f64 = std::f64::consts::FRAC_2_PI;
    const H_1: f64 = 0.301168678939756789251565714187;

    fn near(iv: Interval, v: f64, tol: f64) -> bool {
        iv.lo <= v + 1e-16 && iv.hi >= v - 1e-16 && iv.width() < tol
    }

    #[test]
    fn point_values() {
        assert!(near(sin_series(Interval::point(1.0)), SIN_1, 4e-15));
        assert!(near(cos_series(Interval::point(1.0)), COS_1, 4e-15));
        assert!(near(sinc_series(half_pi()), SINC_HALF_PI, 4e-15));
        assert!(near(h_series(Interval::point(1.0)), H_1, 4e-15));
        assert!(near(h_series(Interval::ZERO), 1.0 / 3.0, 4e-15));
        assert!(sinc_series(Interval::ZERO).contains(1.0));
    }

    #[test]
    fn cos_near_half_pi_keeps_relative_accuracy() {
        let x = Interval::point(1.5707863267948966); // π/2 − 1e-5
        let c = cos_point(x);
        assert!(c.lo > 9.99e-6 && c.hi < 1.001e-5);
        assert!(c.width() < 1e-15);
    }

    #[test]
    fn ranges_contain_sampled_values() {
        for i in 0..50 {
            let a = i as f64 * 0.03;
            let b = a + 0.02;
            let (s, c, z) =
                (sin_range(Interval::new(a, b)), cos_range(Interval::new(a, b)), sinc_range(Interval::new(a, b)));
            for j in 0..=10 {
                let x = a + (b - a) * j as f64 / 10.0;
                assert!(s.contains(x.sin()));
                assert!(c.contains(x.cos()));
                let sx = if x == 0.0 { 1.0 } else { x.sin() / x };
                assert!(z.lo <= sx + 1e-15 && z.hi >= sx - 1e-15);
            }
        }
    }
}
