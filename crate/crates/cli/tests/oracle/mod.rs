//! Brute-force and fixed-point oracles for the command-line tests. They use
//! plain machine integers, rational folding and integer square roots only.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

pub fn smallest_factor(n: u64) -> u64 {
    (2..)
        .take_while(|p| p * p <= n)
        .find(|p| n.is_multiple_of(*p))
        .unwrap_or(n)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

/// Prime factors with multiplicity.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_factor(n);
        out.push(p);
        n /= p;
    }
    out
}

/// Euler's rule for the continuant: sum over deletions of disjoint
/// adjacent pairs of the product of what is left.
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

/// Certain leading partial quotients of `√n` from `floor(√n·10^digits)`.
pub fn sqrt_terms(n: u64, digits: u32) -> Vec<BigInt> {
    let s = BigInt::from(10).pow(digits);
    let root = (BigInt::from(n) * &s * &s).sqrt();
    let mut lo = BigRational::new(root.clone(), s.clone());
    let mut hi = BigRational::new(root + 1, s);
    let mut out = Vec::new();
    loop {
        let (fl, fh) = (lo.floor(), hi.floor());
        if fl != fh || lo == fl {
            return out;
        }
        out.push(fl.to_integer());
        let next_lo = (&hi - &fh).recip();
        hi = (&lo - &fl).recip();
        lo = next_lo;
    }
}

/// Minimal `y` in `1..=y_limit` with `x² - n·y² = ±1`, `-1` tried first.
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

/// Every solution of `x² - n·y² = ±1` is a convergent of `√n`, so the
/// first convergent that solves it has the minimal `y`.
pub fn convergent_pell(n: u64, digits: u32) -> Option<(BigInt, BigInt, i32)> {
    let big = BigInt::from(n);
    let terms: Vec<BigRational> = sqrt_terms(n, digits)
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
