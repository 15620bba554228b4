//! Exact number kinds: arbitrary-precision integers and rationals, Gaussian
//! rationals, and quadratic surds `(a + b√d)/c`.
//!
//! Integers and rationals are `num-bigint`/`num-rational` types; the rational
//! type keeps `den > 0` and `gcd(num, den) = 1` after every operation.

mod fixed;
mod gaussian;
mod surd;

pub use fixed::{arctan, atan2, pi, scale};
pub use gaussian::GaussianRational;
pub use surd::{quadratic_root, Branch, QuadraticSurd};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Integer square root: the `r` with `r² ≤ n < (r+1)²`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::domain(format!("isqrt of negative value {n}")));
    }
    Ok(n.sqrt())
}

/// `Some(r)` when `n = r²`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// True when the rational is the square of a rational.
pub fn is_rational_square(r: &BigRational) -> bool {
    !r.is_negative() && (r.is_zero() || (is_square(r.numer()) && is_square(r.denom())))
}

/// Round `num/den` to an integer, halves away from zero.
pub fn round_half_away(num: &BigInt, den: &BigInt) -> BigInt {
    let (num, den) = if den.is_negative() {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    };
    let twice = BigInt::from(2) * num.abs() + &den;
    let mag = num_integer::Integer::div_floor(&twice, &(BigInt::from(2) * &den));
    if num.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Decimal string for `value / 10^digits` where `value` is already scaled.
pub(crate) fn format_scaled(value: &BigInt, digits: usize) -> String {
    let neg = value.is_negative();
    let mag = value.abs().to_string();
    let body = if digits == 0 {
        mag
    } else {
        let padded = format!("{mag:0>width$}", width = digits + 1);
        let (int, frac) = padded.split_at(padded.len() - digits);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Correctly rounded decimal expansion of a rational, halves away from zero.
pub fn rational_decimal(r: &BigRational, digits: usize) -> String {
    let scaled = r.numer() * scale(digits);
    format_scaled(&round_half_away(&scaled, r.denom()), digits)
}

/// Canonical text for a rational: `p` or `p/q`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
