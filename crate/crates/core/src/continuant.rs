//! Euler's continuant polynomials and finite continued fraction evaluation.
//!
//! `K[] = 1`, `K[a0] = a0` and `K[a0, …, an] = an·K[a0, …, a(n-1)] + K[a0, …, a(n-2)]`.
//! The value of `[a0, a1, …, an]` is `K[a0, …, an] / K[a1, …, an]`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

/// Commutative ring elements a continuant can be evaluated over.
pub trait Ring: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {}

impl<T> Ring for T where T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> {}

/// `K[entries]` by the three-term recurrence.
pub fn continuant<T: Ring>(entries: &[T]) -> T {
    let mut prev = T::zero(); // K over a length -1 window
    let mut cur = T::one();
    for a in entries {
        let next = a.clone() * cur.clone() + prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The pair `(K[entries], K[entries minus last])`, with `K` of a length -1
/// window taken as 0.
pub fn continuant_pair<T: Ring>(entries: &[T]) -> (T, T) {
    let mut prev = T::zero();
    let mut cur = T::one();
    for a in entries {
        let next = a.clone() * cur.clone() + prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `K[a_lo, …, a_hi]` with inclusive, possibly degenerate bounds: an empty
/// window (`hi = lo - 1`) gives 1 and a length -1 window (`hi = lo - 2`)
/// gives 0.
///
/// # Panics
/// If the window is shorter than -1 or reaches outside `entries`.
pub fn window<T: Ring>(entries: &[T], lo: isize, hi: isize) -> T {
    match hi - lo + 1 {
        -1 => T::zero(),
        0 => T::one(),
        len if len > 0 => {
            assert!(
                lo >= 0 && (hi as usize) < entries.len(),
                "window [{lo}, {hi}] out of range"
            );
            continuant(&entries[lo as usize..=hi as usize])
        }
        len => panic!("continuant window of length {len}"),
    }
}

/// Exact value of the finite continued fraction `[a0, …, an]`.
pub fn cf_eval<T>(entries: &[T]) -> Result<T>
where
    T: Ring + std::ops::Div<Output = T>,
{
    if entries.is_empty() {
        return Err(Error::Arity {
            expected: 1,
            got: 0,
        });
    }
    let den = continuant(&entries[1..]);
    if den.is_zero() {
        return Err(Error::DivergentFinite);
    }
    Ok(continuant(entries) / den)
}

/// Ordered continued fraction entries, real or Gaussian rational.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EntrySeq(pub Vec<GaussianRational>);

impl EntrySeq {
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        EntrySeq(entries)
    }

    pub fn from_rationals<I: IntoIterator<Item = BigRational>>(it: I) -> Self {
        EntrySeq(it.into_iter().map(GaussianRational::real).collect())
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(it: I) -> Self {
        EntrySeq(it.into_iter().map(GaussianRational::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.0
    }

    /// Every entry real and strictly positive, the hypothesis under which
    /// infinite continued fractions converge.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(GaussianRational::is_positive_real)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(GaussianRational::is_real)
    }

    pub fn continuant(&self) -> GaussianRational {
        continuant(&self.0)
    }

    pub fn eval(&self) -> Result<GaussianRational> {
        cf_eval(&self.0)
    }
}

/// Rational view of real entries; `None` if any entry has an imaginary part.
pub fn real_entries(entries: &[GaussianRational]) -> Option<Vec<BigRational>> {
    entries.iter().map(|g| g.as_real().cloned()).collect()
}

pub fn all_positive(entries: &[BigRational]) -> bool {
    entries.iter().all(|a| a.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_continuants() {
        assert_eq!(continuant::<BigInt>(&[]), BigInt::from(1));
        assert_eq!(continuant(&ints(&[1, 2, 3])), BigInt::from(10));
        assert_eq!(continuant(&[q(2, 1), q(1, 1), q(1, 2)]), q(7, 2));
    }

    #[test]
    fn degenerate_windows() {
        let a = ints(&[3, 4, 5]);
        assert_eq!(window(&a, 0, -2), BigInt::from(0));
        assert_eq!(window(&a, 0, -1), BigInt::from(1));
        assert_eq!(window(&a, 3, 2), BigInt::from(1));
        assert_eq!(window(&a, 4, 2), BigInt::from(0));
        assert_eq!(window(&a, 1, 2), BigInt::from(21));
    }

    #[test]
    fn evaluation() {
        assert_eq!(cf_eval(&[q(2, 1)]).unwrap(), q(2, 1));
        let w: Vec<_> = [27, 4, 1, 1, 13].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(cf_eval(&w).unwrap(), q(3321, 122));
        let w: Vec<_> = [27, 4, 1, 1, 13, 9].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(cf_eval(&w).unwrap(), q(30134, 1107));
        let z = cf_eval(&[
            GaussianRational::from_int(1),
            GaussianRational::new(q(1, 1), q(-1, 1)),
        ])
        .unwrap();
        assert_eq!(z, GaussianRational::new(q(3, 2), q(1, 2)));
    }

    #[test]
    fn evaluation_errors() {
        assert!(matches!(
            cf_eval::<BigRational>(&[]),
            Err(Error::Arity { .. })
        ));
        // [1, 1, -1]: K[1, -1] = 0
        let w = [q(1, 1), q(1, 1), q(-1, 1)];
        assert_eq!(cf_eval(&w), Err(Error::DivergentFinite));
    }

    #[test]
    fn positivity_flag() {
        let s = EntrySeq::from_ints(ints(&[1, 2]));
        assert!(s.is_positive());
        let s = EntrySeq::new(vec![GaussianRational::from_int(1), GaussianRational::i()]);
        assert!(!s.is_positive());
        assert!(!s.is_real());
    }
}
