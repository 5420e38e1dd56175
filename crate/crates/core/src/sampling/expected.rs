use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::CanonicalKey;
use crate::enumeration::Catalog;
use crate::error::Result;
use crate::teaching::{btd, btd_batch, default_pool_max_len};

use super::{expected_btd_bound, BatchDistribution, BtdBoundProfile};

#[derive(Clone, Debug, PartialEq)]
pub struct BatchSummary {
    pub k: usize,
    pub count: usize,
    pub mass: f64,
    /// Mean teaching dimension over the batch; `None` when the batch has no
    /// mass and was skipped.
    pub mean_btd: Option<f64>,
    pub max_btd: Option<usize>,
    pub all_exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactReport {
    pub batches: Vec<BatchSummary>,
    /// `Σ_{k <= k_max} V_k · mean_k`, from enumerated teaching dimensions.
    pub exact_part: f64,
    /// `Σ_{k > k_max} V_k · D_k`, the profile bound for the rest.
    pub tail_bound: f64,
    pub total: f64,
    /// Every teaching dimension entering `exact_part` was proven minimal.
    pub exact: bool,
}

/// Expected teaching dimension with batches `1..=k_max` enumerated and the
/// remainder bounded by `profile`.
pub fn expected_btd_exact(
    catalog: &Catalog,
    dist: &BatchDistribution,
    profile: &BtdBoundProfile,
    k_max: usize,
    pool_max_len: Option<usize>,
    size_cap: usize,
) -> Result<ExactReport> {
    let mut batches = Vec::with_capacity(k_max);
    let mut exact_part = 0.0;
    let mut exact = true;
    for k in 1..=k_max {
        let mass = dist.mass(k);
        let count = catalog.batch(k)?.count();
        if mass == 0.0 {
            batches.push(BatchSummary {
                k,
                count,
                mass,
                mean_btd: None,
                max_btd: None,
                all_exact: true,
            });
            continue;
        }
        let results = btd_batch(catalog, k, pool_max_len, size_cap)?;
        let total: usize = results.iter().map(|r| r.dimension).sum();
        let mean = total as f64 / count as f64;
        let all_exact = results.iter().all(|r| r.exact);
        exact &= all_exact;
        exact_part += mass * mean;
        batches.push(BatchSummary {
            k,
            count,
            mass,
            mean_btd: Some(mean),
            max_btd: results.iter().map(|r| r.dimension).max(),
            all_exact,
        });
    }
    let tail_bound = expected_btd_bound(dist, profile, k_max)?.tail;
    Ok(ExactReport {
        batches,
        exact_part,
        tail_bound,
        total: exact_part + tail_bound,
        exact,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    /// Samples drawn from batches above this contribute zero and are counted
    /// in [`McReport::beyond_cap`].
    pub k_cap: usize,
    pub pool_max_len: Option<usize>,
    pub size_cap: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McReport {
    /// Estimate of `Σ_{k <= k_cap} V_k · mean_k`.
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub beyond_cap: usize,
    /// Samples whose teaching dimension is only an upper bound.
    pub inexact: usize,
}

/// Monte Carlo estimate of the expected teaching dimension.
///
/// Sample `i` draws from its own ChaCha stream `i` under the given seed, so
/// the estimate does not depend on how the work is scheduled.
pub fn expected_btd_mc(
    catalog: &Catalog,
    dist: &BatchDistribution,
    opts: &McOptions,
) -> Result<McReport> {
    let memo: Mutex<HashMap<CanonicalKey, (usize, bool)>> = Mutex::new(HashMap::new());
    let draws: Vec<Option<(usize, bool)>> = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(i as u64);
            let k = dist.sample_k(rng.gen::<f64>());
            if k > opts.k_cap {
                return Ok(None);
            }
            let concept = catalog.random_concept(k, rng.gen())?;
            let key = concept.key_unchecked();
            if let Some(&hit) = memo.lock().unwrap().get(&key) {
                return Ok(Some(hit));
            }
            let pool = opts.pool_max_len.unwrap_or_else(|| default_pool_max_len(k));
            let r = btd(catalog, &concept, pool, opts.size_cap)?;
            memo.lock().unwrap().insert(key, (r.dimension, r.exact));
            Ok(Some((r.dimension, r.exact)))
        })
        .collect::<Result<_>>()?;

    let n = opts.samples as f64;
    let values: Vec<f64> = draws
        .iter()
        .map(|d| d.map_or(0.0, |(dim, _)| dim as f64))
        .collect();
    let mean = values.iter().sum::<f64>() / n;
    let var = if opts.samples > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(McReport {
        mean,
        std_error: (var / n).sqrt(),
        samples: opts.samples,
        beyond_cap: draws.iter().filter(|d| d.is_none()).count(),
        inexact: draws
            .iter()
            .filter(|d| matches!(d, Some((_, false))))
            .count(),
    })
}
