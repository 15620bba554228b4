//! Continued fraction words, periodic continued fractions, and the
//! constructors and verifiers for the means of two near continued fractions
//! `[a0, …, ak]` and `[a0, …, ak, a(k+1)]`.
//!
//! | mean       | real variant                               | complex variant                            |
//! |------------|--------------------------------------------|--------------------------------------------|
//! | arithmetic | `[a0, …, ak, 2a(k+1), ak, …, a1]`          | `[a0, …, a(k+1), a(k+1), ak, …, a1]`       |
//! | harmonic   | arithmetic word followed by `a0`           | arithmetic word followed by `a0`           |
//! | geometric  | `[a0; (a1, …, 2a(k+1), …, a1, 2a0)*]`      | `[a0; (a1, …, a(k+1), a(k+1), …, a1, 2a0)*]` |
//! | cotangent  | `[(a0, …, 2a(k+1), …, a1, a0)*]`           | `[(a0, …, a(k+1), a(k+1), …, a1, a0)*]`    |
//!
//! The complex variant compares against the near pair
//! `[a0, …, ak, a(k+1) - i]` and `[a0, …, ak, a(k+1) + i]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::continuant::{all_positive, cf_eval, continuant_pair, EntrySeq};
use crate::error::{Error, Result};
use crate::exactnum::{self, quadratic_root, Branch, GaussianRational, QuadraticSurd};

/// A finite continued fraction `[a0, …, an]`, `n ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFWord(EntrySeq);

impl CFWord {
    pub fn new(entries: EntrySeq) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Arity {
                expected: 1,
                got: 0,
            });
        }
        Ok(CFWord(entries))
    }

    pub fn from_rationals(entries: Vec<BigRational>) -> Result<Self> {
        Self::new(EntrySeq::from_rationals(entries))
    }

    pub fn entries(&self) -> &[GaussianRational] {
        self.0.entries()
    }

    /// Real entries, if the word has no imaginary parts.
    pub fn rationals(&self) -> Option<Vec<BigRational>> {
        crate::continuant::real_entries(self.entries())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn eval(&self) -> Result<GaussianRational> {
        self.0.eval()
    }
}

impl fmt::Display for CFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.entries().iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", items.join(","))
    }
}

/// An eventually periodic continued fraction `[pre…; (period…)*]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCF {
    preperiod: Vec<BigRational>,
    period: Vec<BigRational>,
    minimal: bool,
}

impl PeriodicCF {
    /// Period entries must all be positive; the preperiod is unrestricted.
    pub fn new(preperiod: Vec<BigRational>, period: Vec<BigRational>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Arity {
                expected: 1,
                got: 0,
            });
        }
        if !all_positive(&period) {
            return Err(Error::domain(
                "periodic continued fraction needs positive period entries",
            ));
        }
        Ok(PeriodicCF {
            preperiod,
            period,
            minimal: false,
        })
    }

    pub(crate) fn with_minimal(mut self, minimal: bool) -> Self {
        self.minimal = minimal;
        self
    }

    pub fn preperiod(&self) -> &[BigRational] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigRational] {
        &self.period
    }

    /// Whether the period is known to be minimal. Only set by expansion of a
    /// surd, never by the mean constructors.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Exact value as a quadratic surd.
    pub fn value(&self) -> Result<QuadraticSurd> {
        periodic_value(self)
    }

    /// Integer view of the entries, when all are integers.
    pub fn integer_period(&self) -> Option<Vec<BigInt>> {
        self.period
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }
}

fn fmt_list(xs: &[BigRational]) -> String {
    let items: Vec<String> = xs.iter().map(exactnum::fmt_rational).collect();
    format!("[{}]", items.join(","))
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pre={} period={}",
            fmt_list(&self.preperiod),
            fmt_list(&self.period)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    Cotangent,
}

impl MeanKind {
    pub const ALL: [MeanKind; 4] = [
        MeanKind::Arithmetic,
        MeanKind::Geometric,
        MeanKind::Harmonic,
        MeanKind::Cotangent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
            MeanKind::Cotangent => "cotangent",
        }
    }

    /// Arithmetic and harmonic means are finite words; the other two periodic.
    pub fn is_finite(self) -> bool {
        matches!(self, MeanKind::Arithmetic | MeanKind::Harmonic)
    }
}

impl std::str::FromStr for MeanKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MeanKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown mean kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Real,
    Complex,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Real, Variant::Complex];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Real => "real",
            Variant::Complex => "complex",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown variant {s:?}")))
    }
}

fn check_input(entries: &[BigRational]) -> Result<()> {
    if entries.len() < 2 {
        return Err(Error::Arity {
            expected: 2,
            got: entries.len(),
        });
    }
    if !all_positive(entries) {
        return Err(Error::domain("mean constructors need positive entries"));
    }
    Ok(())
}

/// `a0, …, ak, centre…, ak, …, a(stop)` where `centre` is `2a(k+1)` for the
/// real variant and `a(k+1), a(k+1)` for the complex one.
fn mirrored_word(entries: &[BigRational], variant: Variant, stop: usize) -> Vec<BigRational> {
    let k = entries.len() - 2;
    let last = &entries[k + 1];
    let mut word: Vec<BigRational> = entries[..=k].to_vec();
    match variant {
        Variant::Real => word.push(last * BigInt::from(2)),
        Variant::Complex => {
            word.push(last.clone());
            word.push(last.clone());
        }
    }
    if k >= stop {
        word.extend(entries[stop..=k].iter().rev().cloned());
    }
    word
}

/// Finite word for the arithmetic or harmonic mean of the near pair.
pub fn mean_word(entries: &[BigRational], kind: MeanKind, variant: Variant) -> Result<CFWord> {
    check_input(entries)?;
    let word = match kind {
        MeanKind::Arithmetic => mirrored_word(entries, variant, 1),
        MeanKind::Harmonic => mirrored_word(entries, variant, 0),
        _ => {
            return Err(Error::domain(format!(
                "{} mean is periodic; use mean_periodic",
                kind.name()
            )))
        }
    };
    CFWord::from_rationals(word)
}

/// Periodic continued fraction for the geometric or cotangent mean.
pub fn mean_periodic(
    entries: &[BigRational],
    kind: MeanKind,
    variant: Variant,
) -> Result<PeriodicCF> {
    check_input(entries)?;
    match kind {
        MeanKind::Geometric => {
            let mut period = mirrored_word(entries, variant, 1);
            let a0 = period.remove(0);
            period.push(&a0 * BigInt::from(2));
            PeriodicCF::new(vec![a0], period)
        }
        MeanKind::Cotangent => PeriodicCF::new(Vec::new(), mirrored_word(entries, variant, 0)),
        _ => Err(Error::domain(format!(
            "{} mean is a finite word; use mean_word",
            kind.name()
        ))),
    }
}

/// Scale a rational-coefficient polynomial to coprime integer coefficients.
fn clear_denominators(coeffs: &[BigRational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Exact value of an eventually periodic continued fraction.
///
/// The purely periodic tail `y = [w; y]` is the fixed point of
/// `y = (K[w]·y + K[w⁻]) / (K[⁻w]·y + K[⁻w⁻])` (`w⁻` drops the last entry,
/// `⁻w` the first), i.e. the positive root of
/// `K[⁻w]·y² + (K[⁻w⁻] - K[w])·y - K[w⁻] = 0`. The preperiod is then applied
/// as the fractional-linear map with its own continuant coefficients.
pub fn periodic_value(pcf: &PeriodicCF) -> Result<QuadraticSurd> {
    let w = pcf.period();
    let (k_w, k_w_minus) = continuant_pair(w);
    let (k_tail, k_tail_minus) = continuant_pair(&w[1..]);
    let coeffs = clear_denominators(&[k_tail, k_tail_minus - k_w, -k_w_minus]);
    // the constant term is negative and the leading one positive, so the
    // larger root is the positive one
    let tail = match quadratic_root(&coeffs[0], &coeffs[1], &coeffs[2], Branch::Larger) {
        Ok(y) => y,
        Err(Error::NonIrrationalRoot(_)) => return Err(Error::RationalLimit),
        Err(e) => return Err(e),
    };
    let pre = pcf.preperiod();
    if pre.is_empty() {
        return Ok(tail);
    }
    let (p, p_minus) = continuant_pair(pre);
    let (q, q_minus) = continuant_pair(&pre[1..]);
    let num = tail.mul_rational(&p).add_rational(&p_minus);
    let den = tail.mul_rational(&q).add_rational(&q_minus);
    num.checked_div(&den)
}

/// Precision settings for the numeric cotangent check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Significant digits carried by the fixed-point evaluation.
    pub precision_digits: usize,
    /// Agreement required: `|lhs - rhs| ≤ 10^-tolerance_digits`.
    pub tolerance_digits: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            precision_digits: 60,
            tolerance_digits: 30,
        }
    }
}

/// Result of checking one mean identity on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanReport {
    pub kind: MeanKind,
    pub variant: Variant,
    pub entries: Vec<BigRational>,
    /// The near pair `[a0, …, ak]`/`[a0, …, a(k+1)]` (real) or
    /// `[…, a(k+1) - i]`/`[…, a(k+1) + i]` (complex).
    pub near: (GaussianRational, GaussianRational),
    pub construction: MeanConstruction,
    pub checks: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeanConstruction {
    Word {
        word: CFWord,
        value: GaussianRational,
    },
    Periodic {
        cf: PeriodicCF,
        value: QuadraticSurd,
    },
}

impl MeanReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.values().all(|&ok| ok)
    }
}

/// The two near continued fractions the means are taken of.
pub fn near_pair(
    entries: &[BigRational],
    variant: Variant,
) -> Result<(GaussianRational, GaussianRational)> {
    check_input(entries)?;
    let g: Vec<GaussianRational> = entries
        .iter()
        .cloned()
        .map(GaussianRational::real)
        .collect();
    let n = g.len() - 1;
    match variant {
        Variant::Real => Ok((cf_eval(&g[..n])?, cf_eval(&g)?)),
        Variant::Complex => {
            let i = GaussianRational::i();
            let mut minus = g.clone();
            minus[n] = &g[n] - &i;
            let mut plus = g;
            plus[n] = &plus[n] + &i;
            Ok((cf_eval(&minus)?, cf_eval(&plus)?))
        }
    }
}

fn surd_of(g: &GaussianRational, field: &QuadraticSurd) -> Option<QuadraticSurd> {
    g.as_real().map(|r| field.rational_in_field(r))
}

/// Check one mean identity for `entries = a0, …, a(k+1)`.
///
/// Arithmetic and harmonic words are compared exactly with the mean of the
/// near pair. For the geometric mean the square of the periodic value is
/// compared exactly with the product of the pair. For the cotangent mean the
/// doubling identity `(x² - 1)/(2x) = (uv - 1)/(u + v)` is checked exactly
/// and `2·arccot x = arccot u + arccot v` numerically at the configured
/// precision, which also pins the branch.
pub fn verify_mean(
    entries: &[BigRational],
    kind: MeanKind,
    variant: Variant,
    opts: VerifyOptions,
) -> Result<MeanReport> {
    let (u, v) = near_pair(entries, variant)?;
    let mut checks = BTreeMap::new();
    checks.insert("positive_entries".to_string(), all_positive(entries));
    if variant == Variant::Complex {
        checks.insert("conjugate_pair".to_string(), v == u.conj());
    }

    let construction = if kind.is_finite() {
        let word = mean_word(entries, kind, variant)?;
        let value = word.eval()?;
        let expected = match kind {
            MeanKind::Arithmetic => (&u + &v).checked_div(&GaussianRational::from_int(2))?,
            _ => {
                let inv_sum = &u.checked_recip()? + &v.checked_recip()?;
                GaussianRational::from_int(2).checked_div(&inv_sum)?
            }
        };
        checks.insert(format!("{}_exact", kind.name()), value == expected);
        if kind == MeanKind::Harmonic {
            checks.insert(
                "harmonic_duality".to_string(),
                harmonic_duality(entries, variant)?,
            );
        }
        MeanConstruction::Word { word, value }
    } else {
        let cf = mean_periodic(entries, kind, variant)?;
        let x = periodic_value(&cf)?;
        checks.insert("value_positive".to_string(), x.is_positive());
        match kind {
            MeanKind::Geometric => {
                let product = &u * &v;
                let ok = product.as_real().is_some_and(|p| x.square().eq_rational(p));
                checks.insert("geometric_square_exact".to_string(), ok);
            }
            _ => {
                checks.insert(
                    "cotangent_doubling_exact".to_string(),
                    cot_doubling(&x, &u, &v),
                );
                checks.insert(
                    "cotangent_arccot_numeric".to_string(),
                    cot_numeric(&x, &u, &v, opts),
                );
            }
        }
        MeanConstruction::Periodic { cf, value: x }
    };

    Ok(MeanReport {
        kind,
        variant,
        entries: entries.to_vec(),
        near: (u, v),
        construction,
        checks,
    })
}

/// `[0, a0, …]` words: the harmonic word with a leading 0 evaluates to the
/// arithmetic mean of `[0, a0, …, ak]` and `[0, a0, …, a(k+1)]`.
fn harmonic_duality(entries: &[BigRational], variant: Variant) -> Result<bool> {
    let word = mean_word(entries, MeanKind::Harmonic, variant)?;
    let mut shifted = vec![GaussianRational::zero()];
    shifted.extend_from_slice(word.entries());
    let lhs = cf_eval(&shifted)?;
    let (u, v) = near_pair(entries, variant)?;
    let rhs =
        (&u.checked_recip()? + &v.checked_recip()?).checked_div(&GaussianRational::from_int(2))?;
    Ok(lhs == rhs)
}

fn cot_doubling(x: &QuadraticSurd, u: &GaussianRational, v: &GaussianRational) -> bool {
    let rhs = match (u * v - GaussianRational::one()).checked_div(&(u + v)) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let Some(rhs) = surd_of(&rhs, x) else {
        return false;
    };
    let two_x = x.mul_rational(&BigRational::from_integer(BigInt::from(2)));
    let one = BigRational::one();
    match x.square().add_rational(&-one).checked_div(&two_x) {
        Ok(lhs) => lhs == rhs,
        Err(_) => false,
    }
}

fn to_fixed(r: &BigRational, digits: usize) -> BigInt {
    (r.numer() * exactnum::scale(digits)).div_floor(r.denom())
}

/// `arccot t` for `t > 0` as `arctan(1/t)`; for a complex `t` in a conjugate
/// pair the real part of the principal `arctan(1/t)`, i.e.
/// `½·atan2(2α, 1 - α² - β²)` with `1/t = α + βi`.
fn arccot_fixed(t: &GaussianRational, digits: usize) -> Option<BigInt> {
    let w = t.checked_recip().ok()?;
    if w.is_real() {
        return Some(exactnum::arctan(&to_fixed(&w.re, digits), digits));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let y = to_fixed(&(&two * &w.re), digits);
    let x = to_fixed(&(BigRational::one() - w.norm()), digits);
    Some(exactnum::atan2(&y, &x, digits) / 2)
}

fn cot_numeric(
    x: &QuadraticSurd,
    u: &GaussianRational,
    v: &GaussianRational,
    opts: VerifyOptions,
) -> bool {
    const GUARD: usize = 10;
    let digits = opts.precision_digits.max(opts.tolerance_digits) + GUARD;
    let one = exactnum::scale(digits);
    let x_fixed = x.scaled_floor(digits);
    if !x_fixed.is_positive() {
        return false;
    }
    let lhs = exactnum::arctan(&(&one * &one / &x_fixed), digits) * 2;
    let (Some(au), Some(av)) = (arccot_fixed(u, digits), arccot_fixed(v, digits)) else {
        return false;
    };
    // for a conjugate pair the imaginary parts of the two arccot values cancel
    let rhs = au + av;
    let tol = exactnum::scale(digits - opts.tolerance_digits.min(digits));
    let diff: BigInt = lhs - rhs;
    diff.abs() <= tol
}
