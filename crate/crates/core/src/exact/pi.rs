//! Rigorous enclosures of π.
//!
//! π = 16·atan(1/5) − 4·atan(1/239), each arctangent summed in fixed point
//! with a floor/ceil error budget plus the alternating-series tail.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;

/// Bracket of atan(1/n) scaled by 2^scale, as integers (lo, hi).
fn atan_inv_scaled(n: u32, scale: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << scale;
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = n.clone(); // n^(2k+1)
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut k: u64 = 0;
    loop {
        let denom = &power * BigInt::from(2 * k + 1);
        // term lies in [q, q+1)
        let q = one.div_floor(&denom);
        if q.is_zero() {
            // remaining tail < 1 unit; the omitted terms alternate and are bounded by this one
            break;
        }
        if k.is_multiple_of(2) {
            sum += &q;
        } else {
            sum -= &q;
        }
        terms += 1;
        power *= &n2;
        k += 1;
    }
    // each truncated term is off by < 1 unit, and the tail is < 1 unit
    let slack = BigInt::from(terms + 1);
    (&sum - &slack, &sum + &slack)
}

/// Rational lower/upper bounds on π with absolute error below 2^-(bits).
pub fn pi_rational_bounds(bits: u32) -> (BigRational, BigRational) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigRational, BigRational)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let scale = bits + 16;
    let (a_lo, a_hi) = atan_inv_scaled(5, scale);
    let (b_lo, b_hi) = atan_inv_scaled(239, scale);
    let lo = a_lo * 16 - b_hi * 4;
    let hi = a_hi * 16 - b_lo * 4;
    let den = BigInt::one() << scale;
    let out = (BigRational::new(lo, den.clone()), BigRational::new(hi, den));
    cache.lock().unwrap().insert(bits, out.clone());
    out
}

/// Double-precision enclosure of π.
///
/// For any `precision_bits ≥ 53` this is the one-ulp interval
/// [3.141592653589793, 3.1415926535897936]; doubles cannot resolve more.
pub fn pi_enclosure(precision_bits: u32) -> Interval {
    assert!(precision_bits >= 53, "precision_bits must be at least 53");
    let (lo, hi) = pi_rational_bounds(precision_bits.max(64));
    let lo = Interval::from_rational(&lo).lo;
    let hi = Interval::from_rational(&hi).hi;
    Interval { lo, hi }
}

/// Cached 53-bit π enclosure used throughout the interval layer.
pub fn pi() -> Interval {
    static PI: OnceLock<Interval> = OnceLock::new();
    *PI.get_or_init(|| pi_enclosure(53))
}

pub fn half_pi() -> Interval {
    pi().scale_pow2(-1)
}

/// Width of a rational bracket, for tests and diagnostics.
pub fn bracket_width(lo: &BigRational, hi: &BigRational) -> BigRational {
    (hi - lo).abs()
}
