//! Bridge from exact values to `f64`, correctly rounded.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, SurdSum};

fn pow2(exp: i64) -> f64 {
    // exact for every exponent that stays in the normal range
    let mut value = 1.0f64;
    let step = if exp >= 0 { 2.0f64 } else { 0.5f64 };
    let mut remaining = exp.unsigned_abs();
    let mut base = step;
    while remaining > 0 {
        if remaining & 1 == 1 {
            value *= base;
        }
        base *= base;
        remaining >>= 1;
    }
    value
}

/// Round-half-even of `x` to `bits` significant bits (clamped to 1..=53).
pub fn rational_to_f64(x: &Rational, bits: u32) -> f64 {
    let bits = bits.clamp(1, 53) as i64;
    if x.is_zero() {
        return 0.0;
    }
    let negative = x.is_negative();
    let a = x.numer().abs().to_biguint().unwrap();
    let b = x.denom().to_biguint().unwrap();
    // 2^e <= a/b < 2^(e+1)
    let mut e = a.bits() as i64 - b.bits() as i64;
    if shl_signed(&a, -e) < b {
        e -= 1;
    }
    let k = bits - 1 - e;
    let (num, den) = if k >= 0 {
        (&a << (k as usize), b.clone())
    } else {
        (a.clone(), &b << ((-k) as usize))
    };
    let (mut q, r) = num.div_rem(&den);
    let twice = &r << 1usize;
    if twice > den || (twice == den && q.is_odd()) {
        q += 1u32;
    }
    let mantissa: f64 = q.to_string().parse().unwrap();
    let value = mantissa * pow2(-k);
    if negative {
        -value
    } else {
        value
    }
}

fn shl_signed(x: &BigUint, shift: i64) -> BigUint {
    if shift >= 0 {
        x << (shift as usize)
    } else {
        x >> ((-shift) as usize)
    }
}

/// Rational enclosure `[lo, hi]` of the value using `guard` fractional bits
/// per square root.
fn enclosure(value: &SurdSum, guard: usize) -> (Rational, Rational) {
    let scale = Rational::from_integer(BigInt::one() << guard);
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (d, q) in value.terms() {
        if d == 1 {
            lo += q;
            hi += q;
            continue;
        }
        let scaled = BigUint::from(d) << (2 * guard);
        let root = scaled.sqrt();
        let lower = Rational::from_integer(BigInt::from_biguint(Sign::Plus, root.clone())) / &scale;
        let upper = Rational::from_integer(BigInt::from_biguint(Sign::Plus, root + 1u32)) / &scale;
        if q.is_positive() {
            lo += q * &lower;
            hi += q * &upper;
        } else {
            lo += q * &upper;
            hi += q * &lower;
        }
    }
    (lo, hi)
}

/// Correctly rounded value of a surd sum at `bits` significant bits.
pub fn surdsum_to_float(value: &SurdSum, bits: u32) -> f64 {
    if let Some(q) = value.as_rational() {
        return rational_to_f64(&q, bits);
    }
    // irrational values are never rounding ties, so refinement terminates
    let mut guard = bits as usize + 24;
    loop {
        let (lo, hi) = enclosure(value, guard);
        let a = rational_to_f64(&lo, bits);
        let b = rational_to_f64(&hi, bits);
        if a == b {
            return a;
        }
        guard *= 2;
    }
}

pub(crate) fn exact_sign(value: &SurdSum) -> i32 {
    if value.is_zero() {
        return 0;
    }
    let mut guard = 32usize;
    loop {
        let (lo, hi) = enclosure(value, guard);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        guard *= 2;
    }
}
