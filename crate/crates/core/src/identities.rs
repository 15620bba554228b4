//! Executable continuant identities.
//!
//! Each function evaluates both sides of one identity exactly on the given
//! entries and reports whether they agree. Indices follow the usual
//! `a0, …, an` convention; the symmetric identities read `entries` as
//! `a0, …, a(k+1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::continuant::{continuant, window, Ring};
use crate::exactnum::GaussianRational;

fn w<T: Ring>(a: &[T], lo: isize, hi: isize) -> T {
    window(a, lo, hi)
}

fn with_entry<T: Clone>(a: &[T], j: usize, v: T) -> Vec<T> {
    let mut out = a.to_vec();
    out[j] = v;
    out
}

/// `K[a0, …, an] = K[an, …, a0]`.
pub fn reversal<T: Ring + PartialEq>(a: &[T]) -> bool {
    let rev: Vec<T> = a.iter().rev().cloned().collect();
    continuant(a) == continuant(&rev)
}

/// Zeroing the entry at `j` contracts the continuant:
/// `K[…, a(j-1), 0, a(j+1), …] = K[a0…a(j-2)]·K[a(j+1)…an] + K[a0…a(j-1)]·K[a(j+2)…an]`.
pub fn zero_contraction<T: Ring + PartialEq>(a: &[T], j: usize) -> bool {
    let n = a.len() as isize - 1;
    let j = j as isize;
    let lhs = continuant(&with_entry(a, j as usize, T::zero()));
    let rhs = w(a, 0, j - 2) * w(a, j + 1, n) + w(a, 0, j - 1) * w(a, j + 2, n);
    lhs == rhs
}

/// `K[a] = aj·K[a0…a(j-1)]·K[a(j+1)…an] + K[a with aj = 0]`.
pub fn pivot_expansion<T: Ring + PartialEq>(a: &[T], j: usize) -> bool {
    let n = a.len() as isize - 1;
    let ji = j as isize;
    let rhs =
        a[j].clone() * w(a, 0, ji - 1) * w(a, ji + 1, n) + continuant(&with_entry(a, j, T::zero()));
    continuant(a) == rhs
}

/// `K[a] = K[a0…aj]·K[a(j+1)…an] + K[a0…a(j-1)]·K[a(j+2)…an]`.
pub fn split<T: Ring + PartialEq>(a: &[T], j: usize) -> bool {
    let n = a.len() as isize - 1;
    let j = j as isize;
    continuant(a) == w(a, 0, j) * w(a, j + 1, n) + w(a, 0, j - 1) * w(a, j + 2, n)
}

/// `K[a0, …, a(n-1), an + x] = x·K[a0…a(n-1)] + K[a0…an]`; `a` nonempty.
pub fn last_shift<T: Ring + PartialEq>(a: &[T], x: &T) -> bool {
    let n = a.len() - 1;
    let shifted = with_entry(a, n, a[n].clone() + x.clone());
    continuant(&shifted) == x.clone() * continuant(&a[..n]) + continuant(a)
}

/// `K[a0…an]·K[a1…a(n+1)] - K[a1…an]·K[a0…a(n+1)] = (-1)^(n+1)` where
/// `a = a0, …, a(n+1)` has at least one entry.
pub fn determinant(a: &[BigInt]) -> bool {
    let last = a.len() as isize - 1; // n + 1
    let n = last - 1;
    let lhs = w(a, 0, n) * w(a, 1, last) - w(a, 1, n) * w(a, 0, last);
    let sign = if (n + 1) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    lhs == sign
}

fn mirrored<T: Clone>(head: &[T], centre: &[T], tail_from: usize, a: &[T]) -> Vec<T> {
    // head, centre, then a(k), …, a(tail_from)
    let k = a.len() - 2;
    let mut out = head.to_vec();
    out.extend_from_slice(centre);
    if k + 1 > tail_from {
        out.extend(a[tail_from..=k].iter().rev().cloned());
    }
    out
}

fn doubled<T: Ring>(x: &T) -> T {
    x.clone() + x.clone()
}

/// `K[a0…ak, 2a(k+1), ak…a0] = 2·K[a0…ak]·K[a0…a(k+1)]`.
pub fn symmetric_double<T: Ring + PartialEq>(a: &[T]) -> bool {
    let k = a.len() - 2;
    let word = mirrored(&a[..=k], &[doubled(&a[k + 1])], 0, a);
    continuant(&word) == doubled(&(continuant(&a[..=k]) * continuant(a)))
}

/// `K[a0…ak, 2a(k+1), ak…a1] = K[a0…ak]·K[a1…a(k+1)] + K[a0…a(k+1)]·K[a1…ak]`.
pub fn symmetric_double_open<T: Ring + PartialEq>(a: &[T]) -> bool {
    let k = a.len() - 2;
    let word = mirrored(&a[..=k], &[doubled(&a[k + 1])], 1, a);
    let rhs = continuant(&a[..=k]) * continuant(&a[1..]) + continuant(a) * continuant(&a[1..=k]);
    continuant(&word) == rhs
}

/// `K[a0…a(k+1), a(k+1)…a0] = K[a0…a(k+1)]² + K[a0…ak]²`.
pub fn symmetric_repeat<T: Ring + PartialEq>(a: &[T]) -> bool {
    let k = a.len() - 2;
    let word = mirrored(a, &[a[k + 1].clone()], 0, a);
    let full = continuant(a);
    let head = continuant(&a[..=k]);
    continuant(&word) == full.clone() * full + head.clone() * head
}

/// `K[a0…ak, a(k+1) - i]·K[a0…ak, a(k+1) + i] = K[a0…a(k+1)]² + K[a0…ak]²`.
pub fn symmetric_repeat_gaussian(a: &[BigRational]) -> bool {
    let g: Vec<GaussianRational> = a.iter().cloned().map(GaussianRational::real).collect();
    let k = a.len() - 2;
    let i = GaussianRational::i();
    let minus = with_entry(&g, k + 1, &g[k + 1] - &i);
    let plus = with_entry(&g, k + 1, &g[k + 1] + &i);
    let product = continuant(&minus) * continuant(&plus);
    let full = continuant(a);
    let head = continuant(&a[..=k]);
    product == GaussianRational::real(full.clone() * full + head.clone() * head)
}

/// `K[a0…a(k+1), a(k+1)…a1] = K[a0…a(k+1)]·K[a1…a(k+1)] + K[a0…ak]·K[a1…ak]`.
pub fn symmetric_repeat_open<T: Ring + PartialEq>(a: &[T]) -> bool {
    let k = a.len() - 2;
    let word = mirrored(a, &[a[k + 1].clone()], 1, a);
    let rhs = continuant(a) * continuant(&a[1..]) + continuant(&a[..=k]) * continuant(&a[1..=k]);
    continuant(&word) == rhs
}

/// Outcome of one identity on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// Run every identity on integer entries `a` (and the rational shift `x`
/// for the last-entry rule). Position-dependent identities are checked at
/// every position; symmetric ones need at least two entries.
pub fn check_all(a: &[BigInt], x: &BigRational) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let mut push = |name: String, holds: bool| out.push(IdentityCheck { name, holds });

    push("reversal".into(), reversal(a));
    for j in 0..a.len() {
        push(format!("zero_contraction[{j}]"), zero_contraction(a, j));
        push(format!("pivot_expansion[{j}]"), pivot_expansion(a, j));
        push(format!("split[{j}]"), split(a, j));
    }
    if !a.is_empty() {
        let q: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
        push("last_shift".into(), last_shift(&q, x));
        push("determinant".into(), determinant(a));
    }
    if a.len() >= 2 {
        let q: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
        push("symmetric_double".into(), symmetric_double(a));
        push("symmetric_double_open".into(), symmetric_double_open(a));
        push("symmetric_repeat".into(), symmetric_repeat(a));
        push(
            "symmetric_repeat_gaussian".into(),
            symmetric_repeat_gaussian(&q),
        );
        push("symmetric_repeat_open".into(), symmetric_repeat_open(a));
    }
    out
}

/// True when every check in [`check_all`] holds.
pub fn all_hold(a: &[BigInt], x: &BigRational) -> bool {
    check_all(a, x).iter().all(|c| c.holds)
}
