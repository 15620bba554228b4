//! Parallel range scanner over the number-theoretic operations.
//!
//! Items are evaluated on a dedicated rayon pool and merged by position, so
//! the records come out in ascending `n` whatever the worker count.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::is_square;
use crate::numth::{
    cf_factor, is_mordell_candidate, mordell_check, pell_fundamental, sum_two_squares,
    FactorOutcome, FactorReport, MordellReport, PellSolution, TwoSquares,
};
use crate::surdexp::DEFAULT_PERIOD_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Mordell,
    Factor,
    Pell,
    Sum2Sq,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::Mordell => "mordell",
            ScanMode::Factor => "factor",
            ScanMode::Pell => "pell",
            ScanMode::Sum2Sq => "sum2sq",
        }
    }

    /// Whether `n` is scanned in this mode at all.
    pub fn selects(self, n: u64) -> bool {
        match self {
            ScanMode::Mordell => is_mordell_candidate(n),
            ScanMode::Factor => n >= 2,
            ScanMode::Pell | ScanMode::Sum2Sq => n >= 2 && !is_square(&BigInt::from(n)),
        }
    }
}

impl std::str::FromStr for ScanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            ScanMode::Mordell,
            ScanMode::Factor,
            ScanMode::Pell,
            ScanMode::Sum2Sq,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| Error::domain(format!("unknown scan mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub range_lo: u64,
    pub range_hi: u64,
    pub mode: ScanMode,
    pub workers: usize,
    pub period_cap: usize,
}

impl ScanConfig {
    pub fn new(mode: ScanMode, range_lo: u64, range_hi: u64) -> Self {
        ScanConfig {
            range_lo,
            range_hi,
            mode,
            workers: 1,
            period_cap: DEFAULT_PERIOD_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.range_lo > self.range_hi {
            return Err(Error::domain(format!(
                "empty range [{}, {}]",
                self.range_lo, self.range_hi
            )));
        }
        if self.workers == 0 {
            return Err(Error::domain("workers must be at least 1"));
        }
        if self.period_cap == 0 {
            return Err(Error::domain("period cap must be at least 1"));
        }
        Ok(())
    }
}

/// Outcome for one scanned `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanItem {
    Mordell(MordellReport),
    Factor(FactorReport),
    Pell(PellSolution),
    Sum2Sq { n: BigInt, result: TwoSquares },
}

impl ScanItem {
    pub fn n(&self) -> &BigInt {
        match self {
            ScanItem::Mordell(r) => &r.p,
            ScanItem::Factor(r) => &r.n,
            ScanItem::Pell(s) => &s.n,
            ScanItem::Sum2Sq { n, .. } => n,
        }
    }

    /// Whether the operation produced a result rather than an
    /// inapplicability reason.
    pub fn applicable(&self) -> bool {
        match self {
            ScanItem::Mordell(_) | ScanItem::Pell(_) => true,
            ScanItem::Factor(r) => matches!(r.outcome, FactorOutcome::Factors { .. }),
            ScanItem::Sum2Sq { result, .. } => matches!(result, TwoSquares::Found { .. }),
        }
    }

    /// Applicable items pass unless they are a Mordell counterexample or
    /// fail their stated identity.
    pub fn passed(&self) -> bool {
        match self {
            ScanItem::Mordell(r) => !r.counterexample && r.all_checks_pass(),
            ScanItem::Pell(s) => s.holds(),
            ScanItem::Factor(r) => match &r.outcome {
                FactorOutcome::Factors { u, v } => u * v == r.n,
                FactorOutcome::Inapplicable(_) => true,
            },
            ScanItem::Sum2Sq { n, result } => match result {
                TwoSquares::Found { a, b, .. } => a * a + b * b == *n,
                TwoSquares::EvenPeriod { .. } => true,
            },
        }
    }

    pub fn period_length(&self) -> Option<usize> {
        match self {
            ScanItem::Mordell(r) => Some(r.l),
            ScanItem::Factor(r) => r.period_length,
            ScanItem::Pell(s) => Some(s.period_length),
            ScanItem::Sum2Sq { result, .. } => Some(match result {
                TwoSquares::Found { period_length, .. }
                | TwoSquares::EvenPeriod { period_length } => *period_length,
            }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub items: usize,
    pub applicable: usize,
    pub inapplicable: usize,
    pub pass: usize,
    pub fail: usize,
    pub max_period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub records: Vec<ScanItem>,
    pub summary: ScanSummary,
}

/// The error for the smallest failing `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanError {
    pub n: u64,
    pub error: Error,
}

fn evaluate(mode: ScanMode, n: u64, cap: usize) -> Result<ScanItem> {
    let big = BigInt::from(n);
    Ok(match mode {
        ScanMode::Mordell => ScanItem::Mordell(mordell_check(&big, cap)?),
        ScanMode::Factor => ScanItem::Factor(cf_factor(&big, cap)?),
        ScanMode::Pell => ScanItem::Pell(pell_fundamental(&big, cap)?),
        ScanMode::Sum2Sq => ScanItem::Sum2Sq {
            result: sum_two_squares(&big, cap)?,
            n: big,
        },
    })
}

pub fn summarize(records: &[ScanItem]) -> ScanSummary {
    let mut s = ScanSummary::default();
    for r in records {
        s.items += 1;
        if r.applicable() {
            s.applicable += 1;
        } else {
            s.inapplicable += 1;
        }
        if r.passed() {
            s.pass += 1;
        } else {
            s.fail += 1;
        }
        s.max_period = s.max_period.max(r.period_length().unwrap_or(0));
    }
    s
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanResult, ScanError> {
    config.validate().map_err(|error| ScanError {
        n: config.range_lo,
        error,
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ScanError {
            n: config.range_lo,
            error: Error::domain(format!("cannot start worker pool: {e}")),
        })?;
    let mode = config.mode;
    let cap = config.period_cap;
    let outcomes: Vec<Option<Result<ScanItem>>> = pool.install(|| {
        (config.range_lo..=config.range_hi)
            .into_par_iter()
            .map(|n| mode.selects(n).then(|| evaluate(mode, n, cap)))
            .collect()
    });
    let mut records = Vec::new();
    for (offset, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            None => {}
            Some(Ok(item)) => records.push(item),
            Some(Err(error)) => {
                return Err(ScanError {
                    n: config.range_lo + offset as u64,
                    error,
                })
            }
        }
    }
    let summary = summarize(&records);
    Ok(ScanResult { records, summary })
}
