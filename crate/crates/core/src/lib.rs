//! Exact arithmetic for near continued fractions.
//!
//! Continuant polynomials, finite and periodic continued fractions, the
//! arithmetic, geometric, harmonic and cotangent means of two near continued
//! fractions (with their complex counterparts), expansion of quadratic
//! irrationals, and the number-theoretic applications built on them: Pell
//! solutions, factoring from the central term of `√n`, sums of two squares
//! and the Mordell divisibility check. Everything is computed exactly over
//! big integers; only the cotangent-mean check is numeric.

pub mod cfcore;
pub mod continuant;
pub mod error;
pub mod exactnum;
pub mod identities;
pub mod numth;
pub mod scan;
pub mod surdexp;

pub use cfcore::{
    mean_periodic, mean_word, periodic_value, verify_mean, CFWord, MeanConstruction, MeanKind,
    MeanReport, PeriodicCF, Variant, VerifyOptions,
};
pub use continuant::{cf_eval, continuant, EntrySeq};
pub use error::{Error, ErrorClass, Result};
pub use exactnum::{
    isqrt, quadratic_root, Branch, GaussianRational, Integer, QuadraticSurd, Rational,
};
pub use numth::{
    cf_factor, is_prime, mordell_check, pell4_fundamental, pell_fundamental, sum_two_squares,
    FactorOutcome, FactorReport, Inapplicable, MordellReport, PellSolution, TwoSquares,
};
pub use scan::{run_scan, ScanConfig, ScanError, ScanItem, ScanMode, ScanResult, ScanSummary};
pub use surdexp::{
    expand_surd, half_sqrt_cf, sqrt_cf, HalfSqrtExpansion, Parity, SqrtExpansion, SurdState,
    DEFAULT_PERIOD_CAP,
};
