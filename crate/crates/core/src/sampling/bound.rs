use crate::error::{Error, Result};

use super::BatchDistribution;

/// Upper bound `D_k` on the average teaching dimension of batch `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BtdBoundProfile {
    /// `D_k = coeff · base^k`; the default `2^(2k-1)` is `0.5 · 4^k`.
    Exponential { coeff: f64, base: f64 },
    /// `D_k = k^2`.
    Square,
}

impl Default for BtdBoundProfile {
    fn default() -> Self {
        BtdBoundProfile::Exponential {
            coeff: 0.5,
            base: 4.0,
        }
    }
}

impl BtdBoundProfile {
    pub fn value(&self, k: usize) -> f64 {
        match *self {
            BtdBoundProfile::Exponential { coeff, base } => coeff * base.powi(k as i32),
            BtdBoundProfile::Square => (k * k) as f64,
        }
    }

    /// `Σ_{k >= from} D_k · first · ratio^(k - start)` in closed form.
    fn geometric_tail_sum(&self, from: usize, start: usize, first: f64, ratio: f64) -> Result<f64> {
        debug_assert!(from >= start);
        let lead = first * ratio.powi((from - start) as i32);
        match *self {
            BtdBoundProfile::Exponential { coeff, base } => {
                let q = ratio * base;
                if q >= 1.0 {
                    return Err(Error::Diverges { ratio: q });
                }
                Ok(lead * coeff * base.powi(from as i32) / (1.0 - q))
            }
            BtdBoundProfile::Square => {
                if ratio >= 1.0 {
                    return Err(Error::Diverges { ratio });
                }
                // Σ_{j>=0} (j + K)^2 q^j
                let (q, k) = (ratio, from as f64);
                let s0 = 1.0 / (1.0 - q);
                let s1 = q / (1.0 - q).powi(2);
                let s2 = q * (1.0 + q) / (1.0 - q).powi(3);
                Ok(lead * (s2 + 2.0 * k * s1 + k * k * s0))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub k: usize,
    pub mass: f64,
    pub bound: f64,
    pub product: f64,
    pub cumulative: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// Terms `k = 1..=k_terms`.
    pub rows: Vec<BoundRow>,
    pub partial: f64,
    /// `Σ_{k > k_terms} V_k · D_k`, summed in closed form.
    pub tail: f64,
    pub total: f64,
}

/// `Σ_k V_k · D_k`, an upper bound on the expected teaching dimension.
///
/// The first `k_terms` products are listed; everything beyond is added as a
/// closed-form tail, so `total` does not depend on `k_terms`.
pub fn expected_btd_bound(
    dist: &BatchDistribution,
    profile: &BtdBoundProfile,
    k_terms: usize,
) -> Result<BoundReport> {
    let mut rows = Vec::with_capacity(k_terms);
    let mut cumulative = 0.0;
    for k in 1..=k_terms {
        let (mass, bound) = (dist.mass(k), profile.value(k));
        let product = mass * bound;
        cumulative += product;
        rows.push(BoundRow {
            k,
            mass,
            bound,
            product,
            cumulative,
        });
    }

    let tail_start = dist.tail_start();
    let explicit_end = tail_start.max(k_terms + 1);
    let mut tail: f64 = (k_terms + 1..explicit_end)
        .map(|k| dist.mass(k) * profile.value(k))
        .sum();
    if let Some(t) = dist.tail() {
        if t.first > 0.0 {
            tail += profile.geometric_tail_sum(explicit_end, t.start, t.first, t.ratio)?;
        }
    }
    Ok(BoundReport {
        rows,
        partial: cumulative,
        tail,
        total: cumulative + tail,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub k: usize,
    pub next: usize,
    pub mass: f64,
    pub next_mass: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneReport {
    pub monotone: bool,
    pub violation: Option<Violation>,
    /// `(k, v_k = V_k / N_k)` for batches with known size.
    pub per_concept: Vec<(usize, f64)>,
}

/// Checks that the per-concept mass `v_k = V_k / N_k` never increases with
/// `k`. `counts[k-1]` is `N_k` for the enumerated batches.
///
/// Past the known counts the check falls back to batch masses: batches only
/// grow, so `V_{k+1} <= V_k` implies `v_{k+1} <= v_k`. The geometric tail
/// is non-increasing by construction.
pub fn validate_monotone(dist: &BatchDistribution, counts: &[u64]) -> MonotoneReport {
    let per_concept: Vec<(usize, f64)> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| (i + 1, dist.mass(i + 1) / n as f64))
        .collect();

    let last = counts.len().max(dist.tail_start());
    let mut violation = None;
    for k in 1..last {
        let (a, b) = if k < counts.len() {
            (per_concept[k - 1].1, per_concept[k].1)
        } else {
            (dist.mass(k), dist.mass(k + 1))
        };
        if b > a {
            violation = Some(Violation {
                k,
                next: k + 1,
                mass: a,
                next_mass: b,
            });
            break;
        }
    }
    MonotoneReport {
        monotone: violation.is_none(),
        violation,
        per_concept,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn geometric_family_bound_is_closed_form() {
        for r in [0.25, 1.0, 2.0, 10.0] {
            let d = BatchDistribution::geometric(r).unwrap();
            let b = expected_btd_bound(&d, &BtdBoundProfile::default(), 5).unwrap();
            assert!((b.total - 2.0 * (3.0 * r + 1.0)).abs() < 1e-9, "r={r}");
        }
    }

    #[test]
    fn total_is_independent_of_listed_terms() {
        let d = BatchDistribution::mid_heavy();
        let p = BtdBoundProfile::default();
        let base = expected_btd_bound(&d, &p, 0).unwrap().total;
        for k_terms in 1..12 {
            let b = expected_btd_bound(&d, &p, k_terms).unwrap();
            assert!((b.total - base).abs() < 1e-9);
        }
    }

    #[test]
    fn divergent_tail_is_reported() {
        let d = BatchDistribution::geometric_from_one(0.5).unwrap();
        assert!(matches!(
            expected_btd_bound(&d, &BtdBoundProfile::default(), 3),
            Err(Error::Diverges { .. })
        ));
        assert!(expected_btd_bound(&d, &BtdBoundProfile::Square, 3).is_ok());
    }

    #[test]
    fn all_mass_on_third_batch_violates_monotonicity() {
        let one = BigRational::from_integer(1.into());
        let d = BatchDistribution::custom(&[(3, one)], None).unwrap();
        let rep = validate_monotone(&d, &[2, 24, 1028]);
        assert!(!rep.monotone);
        let v = rep.violation.unwrap();
        assert_eq!((v.k, v.next), (2, 3));
        assert_eq!(v.mass, 0.0);
    }

    #[test]
    fn geometric_one_is_monotone() {
        let d = BatchDistribution::geometric(1.0).unwrap();
        assert!(validate_monotone(&d, &[2, 24, 1028]).monotone);
    }
}
