//! Continued fraction expansion of quadratic irrationals `(P + √D)/Q`.
//!
//! Each step takes `a = ⌊(P + √D)/Q⌋`, `P' = aQ - P`, `Q' = (D - P'²)/Q`.
//! The division is exact as long as `Q | D - P²`, which the state enforces
//! once at construction. The first repeated `(P, Q)` pair marks the start of
//! the minimal period.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cfcore::PeriodicCF;
use crate::error::{Error, Result};
use crate::exactnum::is_square;

/// Default bound on the period length of an expansion.
pub const DEFAULT_PERIOD_CAP: usize = 1_000_000;

/// The quadratic irrational `(P + √D)/Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdState {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl SurdState {
    /// Validate and, when `Q ∤ D - P²`, rescale to `(P|Q|, Q|Q|, D·Q²)`.
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_positive() || is_square(&d) {
            return Err(Error::domain(format!(
                "radicand {d} must be a positive non-square"
            )));
        }
        if (&d - &p * &p).is_multiple_of(&q) {
            return Ok(SurdState { p, q, d });
        }
        let m = q.abs();
        Ok(SurdState {
            p: &p * &m,
            d: &d * &q * &q,
            q: q * m,
        })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// True when `(P + √D)/Q > 0`.
    pub fn is_positive(&self) -> bool {
        // sign(P + √D): negative only if P < 0 and P² > D
        let num_positive = !self.p.is_negative() || &self.p * &self.p < self.d;
        num_positive == self.q.is_positive()
    }
}

/// `⌊(P + √D)/Q⌋` given `root = ⌊√D⌋` and non-square `D`.
fn floor_term(p: &BigInt, q: &BigInt, root: &BigInt) -> BigInt {
    if q.is_positive() {
        (p + root).div_floor(q)
    } else {
        // (-P - √D)/(-Q) with -P - √D in (-P - root - 1, -P - root)
        (-p - root - BigInt::one()).div_floor(&-q)
    }
}

/// Expand a quadratic irrational into its eventually periodic continued
/// fraction, with the minimal period.
pub fn expand_surd(state: &SurdState, cap: usize) -> Result<PeriodicCF> {
    if !state.is_positive() {
        return Err(Error::domain("expand_surd needs a positive value"));
    }
    let d = &state.d;
    let root = d.sqrt();
    let mut p = state.p.clone();
    let mut q = state.q.clone();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms: Vec<BigInt> = Vec::new();
    // the preperiod of a reduced-after-a-few-steps state is short; this only
    // turns runaway inputs into errors
    let max_steps = cap.saturating_mul(2).saturating_add(64);
    let start = loop {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            break i;
        }
        if terms.len() >= max_steps {
            return Err(Error::CapExceeded { cap });
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        let a = floor_term(&p, &q, &root);
        let p_next = &a * &q - &p;
        let (q_next, rem) = (d - &p_next * &p_next).div_rem(&q);
        if !rem.is_zero() {
            return Err(Error::invariant(d, "surd state lost Q | D - P²"));
        }
        terms.push(a);
        p = p_next;
        q = q_next;
    };
    if terms.len() - start > cap {
        return Err(Error::CapExceeded { cap });
    }
    let to_q = |xs: &[BigInt]| {
        xs.iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect::<Vec<_>>()
    };
    let pcf = PeriodicCF::new(to_q(&terms[..start]), to_q(&terms[start..]))?;
    Ok(pcf.with_minimal(true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

/// `√(p/q) = [b0; (a1, …, a1, a0)*]` with `a0 = 2·b0` and palindromic
/// interior `a1, …, a(l-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtExpansion {
    pub p: BigInt,
    pub q: BigInt,
    /// `⌊√(p/q)⌋`.
    pub b0: BigInt,
    /// `2·b0`, the last entry of the period.
    pub a0: BigInt,
    /// `a1, …, a(l-1)`; reads the same reversed. Includes the central term.
    pub palindrome: Vec<BigInt>,
    /// `a(k+1)` when `l = 2k + 2`.
    pub central: Option<BigInt>,
    pub period_length: usize,
    pub parity: Parity,
    pub cf: PeriodicCF,
}

impl SqrtExpansion {
    /// `k` with `l = 2k + 1` or `l = 2k + 2`.
    pub fn k(&self) -> usize {
        (self.period_length - 1) / 2
    }

    /// `a1, …, ak`.
    pub fn half(&self) -> &[BigInt] {
        &self.palindrome[..self.k()]
    }

    /// The full minimal period `a1, …, a(l-1), a0`.
    pub fn period(&self) -> Vec<BigInt> {
        let mut out = self.palindrome.clone();
        out.push(self.a0.clone());
        out
    }
}

/// `(1 + √(p/q))/2 = [(1 + b0)/2; (b1, …, b1, b0)*]` with `b0` odd and
/// palindromic interior `b1, …, b(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSqrtExpansion {
    pub p: BigInt,
    pub q: BigInt,
    /// The leading term `(1 + b0)/2`.
    pub first: BigInt,
    /// Odd last entry of the period.
    pub b0: BigInt,
    /// `b1, …, b(m-1)`, including the central term when `m` is even.
    pub palindrome: Vec<BigInt>,
    pub central: Option<BigInt>,
    pub period_length: usize,
    pub parity: Parity,
    pub cf: PeriodicCF,
}

impl HalfSqrtExpansion {
    pub fn period(&self) -> Vec<BigInt> {
        let mut out = self.palindrome.clone();
        out.push(self.b0.clone());
        out
    }
}

fn check_radicand(p: &BigInt, q: &BigInt) -> Result<()> {
    if !q.is_positive() || p <= q {
        return Err(Error::domain(format!(
            "need p/q > 1 with q > 0, got {p}/{q}"
        )));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::domain(format!("{p}/{q} is not in lowest terms")));
    }
    if is_square(p) && is_square(q) {
        return Err(Error::RationalSquareRoot(format!("{p}/{q}")));
    }
    Ok(())
}

fn integer_parts(pcf: &PeriodicCF) -> (Vec<BigInt>, Vec<BigInt>) {
    let to_int = |xs: &[BigRational]| xs.iter().map(|a| a.to_integer()).collect::<Vec<_>>();
    (to_int(pcf.preperiod()), to_int(pcf.period()))
}

fn is_palindrome(xs: &[BigInt]) -> bool {
    xs.iter().eq(xs.iter().rev())
}

fn central_of(palindrome: &[BigInt], l: usize) -> Option<BigInt> {
    l.is_multiple_of(2).then(|| palindrome[l / 2 - 1].clone())
}

fn structure_error(p: &BigInt, q: &BigInt, what: &str, pcf: &PeriodicCF) -> Error {
    Error::invariant(format!("{p}/{q}"), format!("{what}; expansion {pcf}"))
}

/// Expansion of `√(p/q)` decomposed into its palindromic normal form.
pub fn sqrt_cf(p: &BigInt, q: &BigInt, cap: usize) -> Result<SqrtExpansion> {
    check_radicand(p, q)?;
    let state = SurdState::new(BigInt::zero(), q.clone(), p * q)?;
    let cf = expand_surd(&state, cap)?;
    let (pre, period) = integer_parts(&cf);
    let l = period.len();
    let b0 = (p / q).sqrt();
    if pre.len() != 1 || pre[0] != b0 {
        return Err(structure_error(
            p,
            q,
            "preperiod is not [floor(sqrt(p/q))]",
            &cf,
        ));
    }
    let a0 = BigInt::from(2) * &b0;
    if period[l - 1] != a0 {
        return Err(structure_error(
            p,
            q,
            "period does not end in 2·floor(sqrt(p/q))",
            &cf,
        ));
    }
    let palindrome = period[..l - 1].to_vec();
    if !is_palindrome(&palindrome) {
        return Err(structure_error(
            p,
            q,
            "period interior is not a palindrome",
            &cf,
        ));
    }
    Ok(SqrtExpansion {
        p: p.clone(),
        q: q.clone(),
        central: central_of(&palindrome, l),
        b0,
        a0,
        palindrome,
        period_length: l,
        parity: Parity::of(l),
        cf,
    })
}

/// Expansion of `(1 + √(p/q))/2` decomposed into its palindromic normal form.
pub fn half_sqrt_cf(p: &BigInt, q: &BigInt, cap: usize) -> Result<HalfSqrtExpansion> {
    check_radicand(p, q)?;
    // (q + √(pq)) / 2q
    let state = SurdState::new(q.clone(), BigInt::from(2) * q, p * q)?;
    let mut cf = expand_surd(&state, cap)?;
    let (mut pre, mut period) = integer_parts(&cf);
    if pre.is_empty() {
        // a purely periodic expansion such as (1 + √5)/2 = [1̅]: unroll one term
        pre.push(period[0].clone());
        period.rotate_left(1);
        let to_q = |xs: &[BigInt]| xs.iter().cloned().map(BigRational::from_integer).collect();
        cf = PeriodicCF::new(to_q(&pre), to_q(&period))?.with_minimal(true);
    }
    let m = period.len();
    let b0 = period[m - 1].clone();
    if !b0.is_odd() {
        return Err(structure_error(
            p,
            q,
            "period does not end in an odd entry",
            &cf,
        ));
    }
    let first = (&b0 + BigInt::one()) / 2;
    if pre.len() != 1 || pre[0] != first {
        return Err(structure_error(p, q, "preperiod is not [(1 + b0)/2]", &cf));
    }
    let palindrome = period[..m - 1].to_vec();
    if !is_palindrome(&palindrome) {
        return Err(structure_error(
            p,
            q,
            "period interior is not a palindrome",
            &cf,
        ));
    }
    Ok(HalfSqrtExpansion {
        p: p.clone(),
        q: q.clone(),
        first,
        central: central_of(&palindrome, m),
        b0,
        palindrome,
        period_length: m,
        parity: Parity::of(m),
        cf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn qs(xs: &[i64]) -> Vec<BigRational> {
        xs.iter()
            .map(|&x| BigRational::from_integer(int(x)))
            .collect()
    }

    fn expand(p: i64, q: i64, d: i64) -> PeriodicCF {
        expand_surd(
            &SurdState::new(int(p), int(q), int(d)).unwrap(),
            DEFAULT_PERIOD_CAP,
        )
        .unwrap()
    }

    #[test]
    fn expansions() {
        let cf = expand(0, 1, 2);
        assert_eq!(cf.preperiod(), &qs(&[1])[..]);
        assert_eq!(cf.period(), &qs(&[2])[..]);
        assert!(cf.is_minimal());

        let cf = expand(0, 1, 741);
        assert_eq!(cf.preperiod(), &qs(&[27])[..]);
        assert_eq!(cf.period(), &qs(&[4, 1, 1, 13, 18, 13, 1, 1, 4, 54])[..]);

        let cf = expand(1, 2, 5);
        assert!(cf.preperiod().is_empty());
        assert_eq!(cf.period(), &qs(&[1])[..]);
    }

    #[test]
    fn rescaling_and_negative_denominators() {
        // (1 + √3)/3 needs rescaling: 3 ∤ 3 - 1
        let s = SurdState::new(int(1), int(3), int(3)).unwrap();
        assert_eq!(
            (s.p().clone(), s.q().clone(), s.d().clone()),
            (int(3), int(9), int(27))
        );
        // (-5 + √7)/(-1) = 5 - √7 = [2; 2, 1, 4, 1, 1, 1, 4, 1, 1, ...]
        let cf = expand(-5, -1, 7);
        assert_eq!(cf.preperiod(), &qs(&[2, 2])[..]);
        assert_eq!(cf.period(), &qs(&[1, 4, 1, 1])[..]);
    }

    #[test]
    fn domain_errors() {
        assert!(SurdState::new(int(0), int(0), int(2)).is_err());
        assert!(SurdState::new(int(0), int(1), int(4)).is_err());
        let neg = SurdState::new(int(-5), int(1), int(2)).unwrap();
        assert!(expand_surd(&neg, 10).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let s = SurdState::new(int(0), int(1), int(741)).unwrap();
        assert!(matches!(
            expand_surd(&s, 9),
            Err(Error::CapExceeded { cap: 9 })
        ));
        assert!(expand_surd(&s, 10).is_ok());
    }

    #[test]
    fn sqrt_normal_forms() {
        let e = sqrt_cf(&int(2), &int(1), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!(
            (e.b0.clone(), e.period_length, e.parity),
            (int(1), 1, Parity::Odd)
        );
        assert!(e.palindrome.is_empty());
        assert_eq!(e.central, None);

        let e = sqrt_cf(&int(741), &int(1), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!(e.b0, int(27));
        assert_eq!(e.a0, int(54));
        assert_eq!(e.palindrome, ints(&[4, 1, 1, 13, 18, 13, 1, 1, 4]));
        assert_eq!(e.central, Some(int(18)));
        assert_eq!((e.period_length, e.k()), (10, 4));
        assert_eq!(e.half(), &ints(&[4, 1, 1, 13])[..]);

        let e = sqrt_cf(&int(7), &int(3), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!(e.b0, int(1));
        assert_eq!(e.period(), ints(&[1, 1, 8, 1, 1, 2]));
        assert_eq!(e.central, Some(int(8)));
        assert_eq!(e.parity, Parity::Even);
    }

    #[test]
    fn sqrt_cf_rejections() {
        assert!(matches!(
            sqrt_cf(&int(9), &int(4), 100),
            Err(Error::RationalSquareRoot(_))
        ));
        assert!(sqrt_cf(&int(16), &int(1), 100).is_err());
        assert!(matches!(
            sqrt_cf(&int(1), &int(2), 100),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sqrt_cf(&int(6), &int(4), 100),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn half_sqrt_normal_forms() {
        let e = half_sqrt_cf(&int(5), &int(1), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!(
            (e.first.clone(), e.b0.clone(), e.period_length),
            (int(1), int(1), 1)
        );
        let e = half_sqrt_cf(&int(3), &int(1), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!(e.period(), ints(&[2, 1]));
        assert_eq!((e.first.clone(), e.period_length), (int(1), 2));
        let e = half_sqrt_cf(&int(7), &int(1), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!(e.period(), ints(&[1, 4, 1, 1]));
        assert_eq!(e.central, Some(int(4)));
        let e = half_sqrt_cf(&int(13), &int(1), DEFAULT_PERIOD_CAP).unwrap();
        assert_eq!((e.first.clone(), e.period()), (int(2), ints(&[3])));
    }
}
