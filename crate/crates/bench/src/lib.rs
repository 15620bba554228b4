//! Shared inputs for the criterion benchmarks.

use num_bigint::BigInt;

use nearcf_core::{sqrt_cf, DEFAULT_PERIOD_CAP};

/// Deterministic entry sequence `1, 2, ..., 20, 1, 2, ...` of length `len`.
pub fn entries(len: usize) -> Vec<BigInt> {
    (0..len).map(|i| BigInt::from(i % 20 + 1)).collect()
}

/// The integer period of `√n`, for continuant benchmarks on realistic words.
pub fn sqrt_period(n: u64) -> Vec<BigInt> {
    sqrt_cf(&BigInt::from(n), &BigInt::from(1), DEFAULT_PERIOD_CAP)
        .expect("non-square radicand")
        .period()
}
