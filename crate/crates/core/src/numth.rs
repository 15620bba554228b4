//! Number-theoretic applications of the expansion of `√n`.
//!
//! Write the expansion as `√n = [b0; (a1, …, a(l-1), 2b0)*]`.
//!
//! * Pell: `K[b0, a1, …, a(l-1)]² - n·K[a1, …, a(l-1)]² = (-1)^l`.
//! * ±4 Pell, from `(1 + √n)/2 = [(1+b0)/2; (b1, …, b(m-1), b0)*]`:
//!   `(2·K[b0/2, b1, …, b(m-1)])² - n·K[b1, …, b(m-1)]² = 4·(-1)^m`.
//! * Factoring: for even `l = 2k + 2` with even central term `c = a(k+1)`,
//!   `n = [b0, a1, …, ak]·[b0, a1, …, ak, c/2]`, and regrouping the
//!   continuants gives the integer split
//!   `n = (K[b0…ak] / K[a1…ak, c/2]) · (K[b0…ak, c/2] / K[a1…ak])`.
//! * Two squares: for odd `l = 2k + 1`, with `w = b0, a1, …, ak`,
//!   `(K[w] + K[w⁻]·i) / (K[a1…ak] - K[a1…a(k-1)]·i)` is a Gaussian integer
//!   of norm `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::continuant::{continuant, continuant_pair};
use crate::error::{Error, Result};
use crate::exactnum::{is_square, GaussianRational};
use crate::surdexp::{half_sqrt_cf, sqrt_cf, HalfSqrtExpansion, SqrtExpansion};

/// A solution of `x² - n·y² = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub n: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    /// One of `1, -1, 4, -4`.
    pub rhs: i32,
    /// Period length the solution was read from (`l` or `m`).
    pub period_length: usize,
}

impl PellSolution {
    pub fn holds(&self) -> bool {
        &self.x * &self.x - &self.n * &self.y * &self.y == BigInt::from(self.rhs)
    }
}

fn check_pell_input(n: &BigInt) -> Result<()> {
    if n < &BigInt::from(2) {
        return Err(Error::domain(format!(
            "Pell equation needs n >= 2, got {n}"
        )));
    }
    if is_square(n) {
        return Err(Error::domain(format!("{n} is a perfect square")));
    }
    Ok(())
}

fn sign(l: usize) -> i32 {
    if l.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Fundamental solution of `x² - n·y² = ±1` read off one period of `√n`.
pub fn pell_fundamental(n: &BigInt, cap: usize) -> Result<PellSolution> {
    check_pell_input(n)?;
    let e = sqrt_cf(n, &BigInt::one(), cap)?;
    pell_from_expansion(&e)
}

pub(crate) fn pell_from_expansion(e: &SqrtExpansion) -> Result<PellSolution> {
    let mut word = vec![e.b0.clone()];
    word.extend_from_slice(&e.palindrome);
    let sol = PellSolution {
        n: e.p.clone(),
        x: continuant(&word),
        y: continuant(&e.palindrome),
        rhs: sign(e.period_length),
        period_length: e.period_length,
    };
    if !sol.holds() {
        return Err(Error::invariant(
            &e.p,
            format!("x² - n·y² != {} for x = {}, y = {}", sol.rhs, sol.x, sol.y),
        ));
    }
    Ok(sol)
}

/// Solution of `x² - n·y² = ±4` read off one period of `(1 + √n)/2`.
pub fn pell4_fundamental(n: &BigInt, cap: usize) -> Result<PellSolution> {
    check_pell_input(n)?;
    let e = half_sqrt_cf(n, &BigInt::one(), cap)?;
    pell4_from_expansion(&e)
}

fn pell4_from_expansion(e: &HalfSqrtExpansion) -> Result<PellSolution> {
    let mut word = vec![BigRational::new(e.b0.clone(), BigInt::from(2))];
    word.extend(e.palindrome.iter().cloned().map(BigRational::from_integer));
    let x = continuant(&word) * BigInt::from(2);
    if !x.is_integer() {
        return Err(Error::invariant(
            &e.p,
            format!("2·K[b0/2, …] = {x} is not an integer"),
        ));
    }
    let sol = PellSolution {
        n: e.p.clone(),
        x: x.to_integer(),
        y: continuant(&e.palindrome),
        rhs: 4 * sign(e.period_length),
        period_length: e.period_length,
    };
    if !sol.holds() {
        return Err(Error::invariant(
            &e.p,
            format!("x² - n·y² != {} for x = {}, y = {}", sol.rhs, sol.x, sol.y),
        ));
    }
    Ok(sol)
}

/// Why the continued fraction factorization does not apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inapplicable {
    OddPeriod,
    OddCentralTerm,
    PerfectSquare,
}

impl Inapplicable {
    pub fn reason(self) -> &'static str {
        match self {
            Inapplicable::OddPeriod => "odd period",
            Inapplicable::OddCentralTerm => "odd central term",
            Inapplicable::PerfectSquare => "perfect square",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorOutcome {
    /// `u·v = n` with `1 < u ≤ v < n`.
    Factors {
        u: BigInt,
        v: BigInt,
    },
    Inapplicable(Inapplicable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub n: BigInt,
    /// Period length of `√n`; absent for perfect squares.
    pub period_length: Option<usize>,
    pub central: Option<BigInt>,
    pub outcome: FactorOutcome,
    /// The near pair `[b0…ak]` and `[b0…ak, c/2]` whose product is `n`.
    pub near_pair: Option<(BigRational, BigRational)>,
}

/// Split `n` using the central term of the period of `√n`, when it is even.
pub fn cf_factor(n: &BigInt, cap: usize) -> Result<FactorReport> {
    if n < &BigInt::from(2) {
        return Err(Error::domain(format!("factor needs n >= 2, got {n}")));
    }
    let inapplicable = |why, l: Option<usize>, central: Option<BigInt>| FactorReport {
        n: n.clone(),
        period_length: l,
        central,
        outcome: FactorOutcome::Inapplicable(why),
        near_pair: None,
    };
    if is_square(n) {
        return Ok(inapplicable(Inapplicable::PerfectSquare, None, None));
    }
    let e = sqrt_cf(n, &BigInt::one(), cap)?;
    let l = e.period_length;
    let Some(central) = e.central.clone() else {
        return Ok(inapplicable(Inapplicable::OddPeriod, Some(l), None));
    };
    if central.is_odd() {
        return Ok(inapplicable(
            Inapplicable::OddCentralTerm,
            Some(l),
            Some(central),
        ));
    }
    let half_c: BigInt = &central / 2u32;
    let mut head = vec![e.b0.clone()];
    head.extend_from_slice(e.half());
    let mut head_c = head.clone();
    head_c.push(half_c.clone());
    let mut tail_c = e.half().to_vec();
    tail_c.push(half_c);

    let k_head = continuant(&head);
    let k_head_c = continuant(&head_c);
    let k_tail = continuant(e.half());
    let k_tail_c = continuant(&tail_c);

    let violation = |detail: String| Error::invariant(n, format!("{detail}; expansion {}", e.cf));
    let (u, ru) = k_head.div_rem(&k_tail_c);
    let (v, rv) = k_head_c.div_rem(&k_tail);
    if !ru.is_zero() || !rv.is_zero() {
        return Err(violation(format!(
            "regrouped factors are not integers: {k_head}/{k_tail_c}, {k_head_c}/{k_tail}"
        )));
    }
    if &u * &v != *n {
        return Err(violation(format!("{u}·{v} != n")));
    }
    if u.is_one() || v.is_one() {
        return Err(violation(format!("trivial factorization {u}·{v}")));
    }
    let near_pair = (
        BigRational::new(k_head.clone(), k_tail.clone()),
        BigRational::new(k_head_c.clone(), k_tail_c.clone()),
    );
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    Ok(FactorReport {
        n: n.clone(),
        period_length: Some(l),
        central: Some(central),
        outcome: FactorOutcome::Factors { u, v },
        near_pair: Some(near_pair),
    })
}

/// Primitive representation `n = a² + b²` from an odd-period expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoSquares {
    /// `a ≥ b > 0`, `gcd(a, b) = 1`.
    Found {
        a: BigInt,
        b: BigInt,
        period_length: usize,
    },
    /// The period of `√n` is even.
    EvenPeriod { period_length: usize },
}

pub fn sum_two_squares(n: &BigInt, cap: usize) -> Result<TwoSquares> {
    check_pell_input(n)?;
    let e = sqrt_cf(n, &BigInt::one(), cap)?;
    let l = e.period_length;
    if e.parity == crate::surdexp::Parity::Even {
        return Ok(TwoSquares::EvenPeriod { period_length: l });
    }
    let mut w = vec![e.b0.clone()];
    w.extend_from_slice(e.half());
    let (kw, kw_minus) = continuant_pair(&w);
    let (ks, ks_minus) = continuant_pair(e.half());
    let g = |re: BigInt, im: BigInt| {
        GaussianRational::new(BigRational::from_integer(re), BigRational::from_integer(im))
    };
    let z = g(kw, kw_minus).checked_div(&g(ks, -ks_minus))?;
    if !z.is_gaussian_integer() {
        return Err(Error::invariant(
            n,
            format!("quotient {z} is not a Gaussian integer"),
        ));
    }
    let (x, y) = (z.re.to_integer().abs(), z.im.to_integer().abs());
    let (a, b) = if x >= y { (x, y) } else { (y, x) };
    if &a * &a + &b * &b != *n || !a.gcd(&b).is_one() || b.is_zero() {
        return Err(Error::invariant(
            n,
            format!("{a}² + {b}² is not a primitive representation"),
        ));
    }
    Ok(TwoSquares::Found {
        a,
        b,
        period_length: l,
    })
}

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
/// Extra pseudo-random Miller–Rabin rounds above 2^64.
pub const EXTRA_WITNESSES: usize = 24;

/// Miller–Rabin: deterministic below 2^64 with the first twelve prime bases,
/// probabilistic above with [`EXTRA_WITNESSES`] more bases from a fixed
/// generator (so results are reproducible).
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus = n - &one;
    let s = n_minus.trailing_zeros().unwrap_or(0);
    let d = &n_minus >> s;
    let witness = |a: &BigInt| {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus {
            return true;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus {
                return true;
            }
        }
        false
    };
    if !MR_BASES.iter().all(|&a| witness(&BigInt::from(a))) {
        return false;
    }
    if n.bits() <= 64 {
        return true;
    }
    // splitmix64 stream of bases in [2, n - 2]
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let range = n - BigInt::from(3);
    (0..EXTRA_WITNESSES).all(|_| {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let a = BigInt::from(z) % &range + BigInt::from(2);
        witness(&a)
    })
}

/// Every quantity derived from `√p` for a prime `p ≡ 3 (mod 4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MordellReport {
    pub p: BigInt,
    /// Period length `l = 2k + 2`.
    pub l: usize,
    pub k: usize,
    /// Central term `a(k+1)`.
    pub a_central: BigInt,
    /// `K[a1, …, ak]`.
    pub s: BigInt,
    /// `K[b0, a1, …, ak]`.
    pub s0: BigInt,
    /// `2·K[a1, …, ak, a(k+1)/2]`.
    pub s_k1: BigInt,
    /// `2·K[b0, a1, …, ak, a(k+1)/2]`.
    pub s_0k1: BigInt,
    /// `y` of the fundamental solution of `x² - p·y² = 1`.
    pub y_fundamental: BigInt,
    pub structural_checks: BTreeMap<String, bool>,
    /// `p | s`.
    pub divides_half: bool,
    /// `p | y`.
    pub divides_y: bool,
    pub counterexample: bool,
}

impl MordellReport {
    pub fn all_checks_pass(&self) -> bool {
        self.structural_checks.values().all(|&ok| ok)
    }
}

/// `2·K[w, c/2]` computed over the integers as `c·K[w] + 2·K[w⁻]`.
fn doubled_with_half(w: &[BigInt], c: &BigInt) -> BigInt {
    let (kw, kw_minus) = continuant_pair(w);
    c * kw + BigInt::from(2) * kw_minus
}

/// Check the Mordell divisibility statement for `p` through the near
/// continued fraction quantities `s, s0, s(k+1), s(0,k+1)`.
///
/// Any failed structural check is returned as an invariant violation with
/// the full report in the message.
pub fn mordell_check(p: &BigInt, cap: usize) -> Result<MordellReport> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p.mod_floor(&BigInt::from(4)) != BigInt::from(3) {
        return Err(Error::domain(format!("{p} is not 3 mod 4")));
    }
    let e = sqrt_cf(p, &BigInt::one(), cap)?;
    let l = e.period_length;
    let Some(central) = e.central.clone() else {
        return Err(Error::invariant(
            p,
            format!("odd period {l}; expansion {}", e.cf),
        ));
    };
    let k = e.k();
    let half = e.half();
    let mut head = vec![e.b0.clone()];
    head.extend_from_slice(half);

    let s = continuant(half);
    let s0 = continuant(&head);
    let s_k1 = doubled_with_half(half, &central);
    let s_0k1 = doubled_with_half(&head, &central);
    let y = pell_from_expansion(&e)?.y;

    let two = BigInt::from(2);
    let floor_root = p.sqrt();
    let odd_floor = if floor_root.is_odd() {
        floor_root.clone()
    } else {
        &floor_root - 1
    };
    let det_sign = if (k + 1) % 2 == 0 {
        two.clone()
    } else {
        -two.clone()
    };

    let mut checks = BTreeMap::new();
    checks.insert("central_odd".to_string(), central.is_odd());
    checks.insert(
        "central_is_odd_floor_candidate".to_string(),
        central == odd_floor,
    );
    checks.insert("s0_eq_s_k1".to_string(), s0 == s_k1);
    checks.insert("s_0k1_eq_p_s".to_string(), s_0k1 == p * &s);
    checks.insert(
        "determinant".to_string(),
        &s0 * &s_k1 - &s * &s_0k1 == det_sign,
    );
    checks.insert(
        "all_odd".to_string(),
        [&s, &s0, &s_k1, &s_0k1].iter().all(|x| x.is_odd()),
    );
    checks.insert("size_order".to_string(), s_0k1 > s0 && s_k1 >= s);
    checks.insert("y_eq_s_times_s_k1".to_string(), y == &s * &s_k1);

    let divides_half = s.is_multiple_of(p);
    let divides_y = y.is_multiple_of(p);
    checks.insert("equivalence".to_string(), divides_half == divides_y);

    let report = MordellReport {
        p: p.clone(),
        l,
        k,
        a_central: central,
        s,
        s0,
        s_k1,
        s_0k1,
        y_fundamental: y,
        structural_checks: checks,
        divides_half,
        divides_y,
        counterexample: divides_half,
    };
    if !report.all_checks_pass() {
        let failed: Vec<&str> = report
            .structural_checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect();
        return Err(Error::invariant(
            p,
            format!(
                "failed checks {failed:?}; report {report:?}; expansion {}",
                e.cf
            ),
        ));
    }
    Ok(report)
}

/// `p ≡ 3 (mod 4)` and prime, for `u64` inputs.
pub fn is_mordell_candidate(p: u64) -> bool {
    p % 4 == 3 && is_prime(&BigInt::from(p))
}
