//! Fixed-point arctangent and π over big integers.
//!
//! A fixed-point value `v` at precision `p` stands for `v / 10^p`. Results
//! are accurate to a few units in the last place; callers add guard digits.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub fn scale(digits: usize) -> BigInt {
    BigInt::from(10).pow(digits as u32)
}

/// `arctan(1/n)` by its alternating series, for integer `n ≥ 2`.
fn arctan_inv(n: u32, one: &BigInt) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = one / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

/// π at `digits` fractional digits (Machin's formula).
pub fn pi(digits: usize) -> BigInt {
    let one = scale(digits);
    BigInt::from(16) * arctan_inv(5, &one) - BigInt::from(4) * arctan_inv(239, &one)
}

/// `arctan(x)` for fixed-point `x` at precision `digits`.
pub fn arctan(x: &BigInt, digits: usize) -> BigInt {
    let one = scale(digits);
    if x.is_negative() {
        return -arctan(&-x, digits);
    }
    if x > &one {
        // arctan x = π/2 - arctan(1/x)
        let inv = &one * &one / x;
        return pi(digits) / 2 - arctan(&inv, digits);
    }
    // halve the angle three times: arctan x = 2·arctan(x / (1 + √(1 + x²)))
    let mut y = x.clone();
    for _ in 0..3 {
        let root = (&one * &one + &y * &y).sqrt();
        y = &y * &one / (&one + root);
    }
    let y2 = &y * &y / &one;
    let mut power = y;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power * &y2 / &one;
        k += 1;
    }
    sum * 8
}

/// Angle of the point `(x, y)` in `(-π, π]`, fixed-point in and out.
pub fn atan2(y: &BigInt, x: &BigInt, digits: usize) -> BigInt {
    let one = scale(digits);
    if x.is_zero() {
        let half: BigInt = pi(digits) / 2u32;
        return match y.sign() {
            num_bigint::Sign::Minus => -half,
            num_bigint::Sign::NoSign => BigInt::zero(),
            num_bigint::Sign::Plus => half,
        };
    }
    let base = arctan(&(y * &one / x), digits);
    if x.is_positive() {
        base
    } else if y.is_negative() {
        base - pi(digits)
    } else {
        base + pi(digits)
    }
}
