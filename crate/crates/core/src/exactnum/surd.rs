use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{exact_sqrt, format_scaled, scale};
use crate::error::{Error, Result};

/// Trial-division bound for extracting square factors from a radicand.
const SQUARE_SIEVE_LIMIT: u32 = 1 << 16;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SQUARE_SIEVE_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(p, &is_p)| is_p.then_some(p as u32))
            .collect()
    })
}

/// Split `d > 0` as `root² · free`.
///
/// `free` is squarefree whenever every prime up to `cbrt(d)` is tried, i.e.
/// for `d < 2^48`: the cofactor left after trial division then has at most
/// two prime factors and is a square iff it is a perfect square. Beyond that
/// the split is best effort; surd equality compares values, not fields, so
/// it stays exact either way.
fn square_split(d: &BigInt) -> (BigInt, BigInt) {
    let mut rest = d.clone();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > rest {
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        if count > 0 {
            root *= pb.pow(count / 2);
            if count % 2 == 1 {
                free *= &pb;
            }
        }
    }
    match exact_sqrt(&rest) {
        Some(r) => root *= r,
        None => free *= rest,
    }
    (root, free)
}

/// Which real root of a quadratic to select.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Larger,
    Smaller,
}

/// The real number `(a + b√d)/c` with `c > 0`, `gcd(a, b, c) = 1` and `d > 1`
/// stored with its square part moved into `b`.
///
/// `b = 0` is allowed for intermediate results; the value is then the
/// rational `a/c` tagged with the field `Q(√d)` it came from.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// Build and canonicalize `(a + b√d)/c`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_positive() {
            return Err(Error::domain(format!("surd radicand {d} must be positive")));
        }
        let (root, free) = square_split(&d);
        if free.is_one() {
            return Err(Error::RationalSquareRoot(d.to_string()));
        }
        Ok(Self::normalized(a, b * root, c, free))
    }

    /// The rational `r` as an element of this surd's field.
    pub fn rational_in_field(&self, r: &BigRational) -> Self {
        Self::rational_in(r, &self.d)
    }

    /// The rational `r` viewed inside `Q(√d)`; `d` must already be canonical.
    fn rational_in(r: &BigRational, d: &BigInt) -> Self {
        Self::normalized(
            r.numer().clone(),
            BigInt::zero(),
            r.denom().clone(),
            d.clone(),
        )
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: BigInt) -> Self {
        debug_assert!(!c.is_zero());
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        QuadraticSurd { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    /// Sign of `a + b√d`, decided without approximation.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        use num_bigint::Sign::*;
        match (sa, sb) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            (Plus, Minus) | (Minus, Plus) => {
                // |a| vs |b|√d, never equal since d is not a square
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * &self.d;
                let a_wins = a2 > b2d;
                match (sa == Plus, a_wins) {
                    (true, true) | (false, false) => Ordering::Greater,
                    _ => Ordering::Less,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Rewrite `other` over `self.d` when both live in the same field.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.d == other.d {
            return Ok((self.clone(), other.clone()));
        }
        if other.is_rational() {
            return Ok((
                self.clone(),
                Self::normalized(
                    other.a.clone(),
                    BigInt::zero(),
                    other.c.clone(),
                    self.d.clone(),
                ),
            ));
        }
        if self.is_rational() {
            return Ok((
                Self::normalized(
                    self.a.clone(),
                    BigInt::zero(),
                    self.c.clone(),
                    other.d.clone(),
                ),
                other.clone(),
            ));
        }
        // √d' = (r/d)·√d when d·d' = r²
        match exact_sqrt(&(&self.d * &other.d)) {
            Some(r) => {
                let moved = Self::normalized(
                    &other.a * &self.d,
                    &other.b * r,
                    &other.c * &self.d,
                    self.d.clone(),
                );
                Ok((self.clone(), moved))
            }
            None => Err(Error::FieldMismatch(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let (x, y) = self.align(rhs)?;
        Ok(Self::normalized(
            &x.a * &y.c + &y.a * &x.c,
            &x.b * &y.c + &y.b * &x.c,
            &x.c * &y.c,
            x.d,
        ))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let (x, y) = self.align(rhs)?;
        Ok(Self::normalized(
            &x.a * &y.a + &x.b * &y.b * &x.d,
            &x.a * &y.b + &x.b * &y.a,
            &x.c * &y.c,
            x.d,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.recip()?)
    }

    pub fn neg(&self) -> Self {
        Self::normalized(-&self.a, -&self.b, self.c.clone(), self.d.clone())
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same field")
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        self.checked_add(&Self::rational_in(r, &self.d))
            .expect("same field")
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        self.checked_mul(&Self::rational_in(r, &self.d))
            .expect("same field")
    }

    /// Exact comparison with a rational.
    pub fn eq_rational(&self, r: &BigRational) -> bool {
        self.is_rational() && self.a == *r.numer() && self.c == *r.denom()
    }

    pub fn floor(&self) -> BigInt {
        floor_surd(&self.a, &self.b, &self.d, &self.c)
    }

    /// `round(value · 10^digits)` with halves away from zero.
    pub fn scaled_round(&self, digits: usize) -> BigInt {
        let s = scale(digits);
        let two = BigInt::from(2);
        let (neg, v) = if self.signum() == Ordering::Less {
            (true, self.neg())
        } else {
            (false, self.clone())
        };
        // floor(v·s + 1/2) = floor((2s·a + c + 2s·b√d) / 2c)
        let mag = floor_surd(
            &(&two * &s * &v.a + &v.c),
            &(&two * &s * &v.b),
            &v.d,
            &(&two * &v.c),
        );
        if neg {
            -mag
        } else {
            mag
        }
    }

    /// `floor(value · 10^digits)`.
    pub fn scaled_floor(&self, digits: usize) -> BigInt {
        let s = scale(digits);
        floor_surd(&(&s * &self.a), &(&s * &self.b), &self.d, &self.c)
    }

    /// Decimal approximation with `digits` fractional digits, correctly
    /// rounded half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_scaled(&self.scaled_round(digits), digits)
    }
}

/// `floor((a + b√d)/c)` for `c > 0` and `d` not a perfect square
/// (or `b = 0`).
fn floor_surd(a: &BigInt, b: &BigInt, d: &BigInt, c: &BigInt) -> BigInt {
    debug_assert!(c.is_positive());
    if b.is_zero() {
        return a.div_floor(c);
    }
    let m = b * b * d;
    let t: BigInt = num_integer::Roots::sqrt(&m);
    if b.is_positive() {
        // a + √m lies in (a + t, a + t + 1)
        (a + t).div_floor(c)
    } else {
        // a - √m lies in (a - t - 1, a - t)
        (a - t - 1u32).div_floor(c)
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        // a/c = a'/c', sign(b) = sign(b') and b²d/c² = b'²d'/c'²
        &self.a * &other.c == &other.a * &self.c
            && self.b.sign() == other.b.sign()
            && &self.b * &self.b * &self.d * &other.c * &other.c
                == &other.b * &other.b * &other.d * &self.c * &self.c
    }
}

impl Eq for QuadraticSurd {}

impl fmt::Display for QuadraticSurd {
    /// `(a+b√d)/c`, e.g. `(1+1√5)/2` or `(3-2√7)/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{sign}{}√{})/{}",
            self.a,
            self.b.abs(),
            self.d,
            self.c
        )
    }
}

/// The selected real root of `A·x² + B·x + C = 0`.
pub fn quadratic_root(a: &BigInt, b: &BigInt, c: &BigInt, branch: Branch) -> Result<QuadraticSurd> {
    if a.is_zero() {
        return Err(Error::domain("leading coefficient of quadratic is zero"));
    }
    let disc = b * b - BigInt::from(4) * a * c;
    if !disc.is_positive() || exact_sqrt(&disc).is_some() {
        return Err(Error::NonIrrationalRoot(disc.to_string()));
    }
    // (-B ± √Δ)/2A; the + sign is the larger root when A > 0
    let plus = (branch == Branch::Larger) == a.is_positive();
    let root_sign = if plus { BigInt::one() } else { -BigInt::one() };
    QuadraticSurd::new(-b, root_sign, BigInt::from(2) * a, disc)
}
