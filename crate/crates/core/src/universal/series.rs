//! Series bounding the expected teaching dimension under a universal
//! distribution over Elias-gamma-coded programs.
//!
//! Codeword batch `i` has length `2i + 1`. With `N` concepts in the batch
//! and a `2 sqrt(N_{<=k})` bound on the batch-average teaching dimension, term
//! `i` is `2^-(2i+1) · N · 2 sqrt(2^(i+1) - 1)`.

/// `1 + sqrt(2)`.
pub const PROP1_BOUND: f64 = 1.0 + std::f64::consts::SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NkVariant {
    /// `N = 2^(i-1)`, the count used in the bound's derivation.
    Half,
    /// `N = 2^i`, the number of codewords of length `2i + 1`.
    Full,
}

pub fn prop1_term(i: u32, variant: NkVariant) -> f64 {
    let n_exp = match variant {
        NkVariant::Half => i as i32 - 1,
        NkVariant::Full => i as i32,
    };
    let cumulative = 2f64.powi(i as i32 + 1) - 1.0;
    2f64.powi(-(2 * i as i32 + 1)) * 2f64.powi(n_exp) * 2.0 * cumulative.sqrt()
}

/// `2^(-(i+1)/2)`, dominating the `Half` term for every `i`.
pub fn prop1_majorant(i: u32) -> f64 {
    2f64.powf(-(i as f64 + 1.0) / 2.0)
}

/// Sum of terms `0..=i_max`.
pub fn prop1_partial_sum(i_max: u32, variant: NkVariant) -> f64 {
    (0..=i_max).map(|i| prop1_term(i, variant)).sum()
}
