//! Independent oracles shared by the integration tests. None of them go
//! through the continuant recurrence or the surd-state iteration.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn qs(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| q(x, 1)).collect()
}

/// Euler's rule: the continuant is the sum, over every way of deleting
/// disjoint adjacent pairs, of the product of the remaining entries.
pub fn euler_continuant(a: &[BigRational]) -> BigRational {
    fn go(a: &[BigRational], acc: BigRational, out: &mut BigRational) {
        match a.len() {
            0 => *out += acc,
            1 => *out += acc * &a[0],
            _ => {
                go(&a[1..], acc.clone() * &a[0], out);
                go(&a[2..], acc, out);
            }
        }
    }
    let mut out = BigRational::zero();
    go(a, BigRational::one(), &mut out);
    out
}

/// `a0 + 1/(a1 + 1/(…))` folded from the right; `None` on a zero division.
pub fn fold_eval(a: &[BigRational]) -> Option<BigRational> {
    let (last, rest) = a.split_last()?;
    let mut x = last.clone();
    for e in rest.iter().rev() {
        if x.is_zero() {
            return None;
        }
        x = e + x.recip();
    }
    Some(x)
}

/// Leading partial quotients of `(a + b√d)/c` read from a fixed-point
/// approximation with `digits` decimal digits. Only terms that are certain
/// (the bracket `[lo, hi]` agrees) are returned.
pub fn surd_terms(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
    digits: u32,
    max: usize,
) -> Vec<BigInt> {
    let s = BigInt::from(10).pow(digits);
    let root = (d * &s * &s).sqrt(); // floor(√d · 10^digits)
    let bracket = |r: &BigInt| BigRational::new(a * &s + b * r, c * &s);
    let (mut lo, mut hi) = (bracket(&root), bracket(&(&root + 1)));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut out = Vec::new();
    while out.len() < max {
        let (fl, fh) = (lo.floor(), hi.floor());
        if fl != fh || lo == fl {
            break;
        }
        out.push(fl.to_integer());
        let (l2, h2) = ((&hi - &fh).recip(), (&lo - &fl).recip());
        lo = l2;
        hi = h2;
    }
    out
}

/// Minimal `y` in `1..=y_limit` with `x² - n·y² = ±1`, trying `-1` first.
pub fn brute_pell(n: u64, y_limit: u64) -> Option<(BigInt, BigInt, i32)> {
    let n = n as u128;
    for y in 1..=y_limit as u128 {
        let ny2 = n * y * y;
        for (target, rhs) in [(ny2 - 1, -1), (ny2 + 1, 1)] {
            let x = target.sqrt();
            if x * x == target {
                return Some((BigInt::from(x), BigInt::from(y), rhs));
            }
        }
    }
    None
}

/// First convergent `x/y` of `√n` with `x² - n·y² = ±1`, the convergents
/// coming from a fixed-point approximation of `√n` with `digits` digits.
pub fn convergent_pell(n: u64, digits: u32) -> Option<(BigInt, BigInt, i32)> {
    let big = BigInt::from(n);
    let terms: Vec<BigRational> = surd_terms(
        &BigInt::zero(),
        &BigInt::one(),
        &BigInt::one(),
        &big,
        digits,
        usize::MAX,
    )
    .into_iter()
    .map(BigRational::from_integer)
    .collect();
    (1..=terms.len()).find_map(|i| {
        let c = fold_eval(&terms[..i])?;
        let (x, y) = (c.numer().clone(), c.denom().clone());
        let v = &x * &x - &big * &y * &y;
        if v.is_one() {
            Some((x, y, 1))
        } else if v == -BigInt::one() {
            Some((x, y, -1))
        } else {
            None
        }
    })
}

pub fn smallest_factor(n: u64) -> u64 {
    (2..)
        .take_while(|p| p * p <= n)
        .find(|p| n.is_multiple_of(*p))
        .unwrap_or(n)
}

pub fn is_prime_small(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Every `(a, b)` with `a ≥ b ≥ 1`, `a² + b² = n` and `gcd(a, b) = 1`.
pub fn primitive_two_squares(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut b = 1;
    while 2 * b * b <= n {
        let r = n - b * b;
        let a = r.sqrt();
        if a * a == r && a.gcd(&b) == 1 {
            out.push((a, b));
        }
        b += 1;
    }
    out
}
