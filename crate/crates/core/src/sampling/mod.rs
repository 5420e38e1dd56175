//! Batch sampling distributions and expected teaching dimensions.
//!
//! A [`BatchDistribution`] assigns mass `V_k` to each complexity batch;
//! every concept in batch `k` then has sampling mass `V_k / N_k`. The
//! expected teaching dimension is bounded by `Σ V_k · D_k` for any profile
//! `D_k` bounding the batch averages, computed here in closed form, and is
//! computed exactly for the enumerable batches.

mod bound;
mod dist;
mod expected;

pub use bound::{
    expected_btd_bound, validate_monotone, BoundReport, BoundRow, BtdBoundProfile, MonotoneReport,
    Violation,
};
pub use dist::{parse_distribution, BatchDistribution, DistKind, GeometricTail};
pub use expected::{
    expected_btd_exact, expected_btd_mc, BatchSummary, ExactReport, McOptions, McReport,
};
