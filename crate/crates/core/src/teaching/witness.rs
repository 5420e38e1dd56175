//! Minimal teaching sets for FSM concepts.
//!
//! A witness for a concept `c` with `k` states must eliminate every other
//! concept in batches `1..=k`. Larger concepts have strictly lower bias and
//! can never tie. Candidate examples are the words up to `pool_max_len`
//! labelled by `c`. A competitor is eliminated by exactly those pool words
//! on which it disagrees with `c`, so the search is a minimum hitting set
//! over the competitors' disagreement masks.

use rayon::prelude::*;

use crate::automata::{BinaryString, Dfa};
use crate::enumeration::Catalog;
use crate::error::{Error, Result};

use super::{ExampleSet, LabeledExample};

pub const DEFAULT_SIZE_CAP: usize = 6;

/// Longest pool word supported: the pool must fit in a 128-bit mask.
pub const MAX_POOL_LEN: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeachingResult {
    pub witness: ExampleSet,
    pub dimension: usize,
    /// `true` when no smaller witness exists within the pool.
    pub exact: bool,
    pub pool_max_len: usize,
}

/// `2k - 2`: long enough to separate any two machines with at most `k`
/// states.
pub fn default_pool_max_len(k: usize) -> usize {
    2 * k - 2
}

/// Biased teaching dimension of a canonical concept, relative to the pool
/// of words of length at most `pool_max_len`.
///
/// Subset sizes `0..=size_cap` are searched exhaustively; among witnesses of
/// the minimal size the one whose sorted word list is shortlex-least is
/// returned. Beyond `size_cap` a greedy cover is returned with
/// `exact = false`.
pub fn btd(
    catalog: &Catalog,
    c: &Dfa,
    pool_max_len: usize,
    size_cap: usize,
) -> Result<TeachingResult> {
    if !c.is_canonical() {
        return Err(Error::NotCanonical);
    }
    if pool_max_len > MAX_POOL_LEN {
        return Err(Error::InvalidArgument(format!(
            "pool_max_len {pool_max_len} exceeds the supported maximum {MAX_POOL_LEN}"
        )));
    }
    let k = c.num_states();
    let pool_size = (1usize << (pool_max_len + 1)) - 1;
    let target = acceptance_mask(c, pool_size);

    let mut masks = Vec::new();
    for j in 1..=k {
        for other in catalog.batch(j)?.concepts() {
            if other == c {
                continue;
            }
            let diff = acceptance_mask(other, pool_size) ^ target;
            if diff == 0 {
                return Err(Error::NoWitness(format!(
                    "pool of words up to length {pool_max_len} cannot separate the target from a {j}-state concept"
                )));
            }
            masks.push(diff);
        }
    }
    let family = minimal_family(masks);

    let (chosen, exact) = match (0..=size_cap).find_map(|m| lex_least_cover(&family, pool_size, m))
    {
        Some(chosen) => (chosen, true),
        None => (greedy_cover(&family, pool_size), false),
    };

    let witness = ExampleSet::from_examples(chosen.iter().map(|&i| {
        let instance = BinaryString::from_shortlex_index(i as u64);
        LabeledExample {
            label: c.run(&instance),
            instance,
        }
    }))?;
    Ok(TeachingResult {
        dimension: witness.len(),
        witness,
        exact,
        pool_max_len,
    })
}

/// [`btd`] for every concept of batch `k`, in batch order. `pool_max_len`
/// defaults to `2k - 2`.
pub fn btd_batch(
    catalog: &Catalog,
    k: usize,
    pool_max_len: Option<usize>,
    size_cap: usize,
) -> Result<Vec<TeachingResult>> {
    let pool = pool_max_len.unwrap_or_else(|| default_pool_max_len(k));
    // Enumerate the competitor batches up front so workers only read them.
    for j in 1..=k {
        catalog.batch(j)?;
    }
    catalog
        .batch(k)?
        .concepts()
        .par_iter()
        .map(|c| btd(catalog, c, pool, size_cap))
        .collect()
}

fn acceptance_mask(d: &Dfa, pool_size: usize) -> u128 {
    d.pool_acceptance(pool_size)
        .into_iter()
        .enumerate()
        .fold(0u128, |m, (i, a)| if a { m | 1 << i } else { m })
}

/// Distinct masks with every proper superset removed; hitting the survivors
/// hits everything.
fn minimal_family(mut masks: Vec<u128>) -> Vec<u128> {
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u128> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&s| (s & m) == s) {
            kept.push(m);
        }
    }
    kept
}

/// Lexicographically least set of exactly `size` pool indices hitting every
/// mask, if any.
fn lex_least_cover(family: &[u128], pool_size: usize, size: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(size);
    search(family.to_vec(), 0, size, pool_size, &mut chosen).then_some(chosen)
}

fn search(
    uncovered: Vec<u128>,
    start: usize,
    remaining: usize,
    pool_size: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if uncovered.is_empty() {
        return remaining == 0;
    }
    if remaining == 0 || start >= pool_size {
        return false;
    }
    let window = !0u128 << start;
    // Indices are chosen in increasing order, so a mask whose highest bit
    // lies below the next pick can no longer be hit.
    let mut last = usize::MAX;
    for &m in &uncovered {
        let live = m & window;
        if live == 0 {
            return false;
        }
        last = last.min(127 - live.leading_zeros() as usize);
    }

    // Pairwise-disjoint masks each need their own element.
    let mut packed = 0u32;
    let mut used = 0u128;
    for &m in &uncovered {
        let live = m & window;
        if live & used == 0 {
            used |= live;
            packed += 1;
            if packed as usize > remaining {
                return false;
            }
        }
    }

    if remaining == 1 {
        let common = uncovered.iter().fold(window, |acc, &m| acc & m);
        if common == 0 {
            return false;
        }
        chosen.push(common.trailing_zeros() as usize);
        return true;
    }

    for i in start..=last {
        let bit = 1u128 << i;
        // An element hitting nothing new is redundant in a minimum cover.
        if !uncovered.iter().any(|&m| m & bit != 0) {
            continue;
        }
        let rest: Vec<u128> = uncovered
            .iter()
            .copied()
            .filter(|&m| m & bit == 0)
            .collect();
        chosen.push(i);
        if search(rest, i + 1, remaining - 1, pool_size, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Repeatedly picks the pool word hitting the most uncovered masks (lowest
/// index on ties).
fn greedy_cover(family: &[u128], pool_size: usize) -> Vec<usize> {
    let mut uncovered = family.to_vec();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let best = (0..pool_size)
            .max_by_key(|&i| {
                let hits = uncovered.iter().filter(|&&m| m >> i & 1 == 1).count();
                (hits, std::cmp::Reverse(i))
            })
            .expect("non-empty pool");
        uncovered.retain(|&m| m >> best & 1 == 0);
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen
}
