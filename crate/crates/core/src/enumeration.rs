//! Batches `C_k` of canonical minimal binary DFAs with exactly `k` states.
//!
//! Generation walks transition slots in breadth-first order (`(0,0), (0,1),
//! (1,0), …`). A slot may point at any already-numbered state or at the next
//! fresh number, and state `q` must already be numbered when its own slots
//! come up. Every accessible skeleton is produced exactly once in canonical
//! numbering, so pairing skeletons with all `2^k` acceptance vectors and
//! keeping the minimal ones yields each concept once, without deduplication.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::minimize::{hopcroft, minimize};
use crate::automata::{CanonicalKey, Dfa};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 4;

/// Attempts allowed per draw when sampling above the enumeration cap.
pub const DEFAULT_SAMPLING_ATTEMPTS: usize = 200_000;

/// All concepts of complexity exactly `k`, sorted by canonical key.
#[derive(Debug, Clone)]
pub struct ConceptBatch {
    k: usize,
    concepts: Vec<Dfa>,
}

impl ConceptBatch {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn concepts(&self) -> &[Dfa] {
        &self.concepts
    }

    pub fn count(&self) -> usize {
        self.concepts.len()
    }

    /// Position of a canonical machine within the batch.
    pub fn position(&self, d: &Dfa) -> Option<usize> {
        if d.num_states() != self.k {
            return None;
        }
        let key = d.key_unchecked();
        self.concepts
            .binary_search_by(|c| c.key_unchecked().cmp(&key))
            .ok()
    }
}

/// Enumerates `C_k` from scratch.
pub fn enumerate_batch(k: usize, cap: usize) -> Result<ConceptBatch> {
    check_k(k, cap)?;
    let mut keyed: Vec<(CanonicalKey, Dfa)> = skeletons(k)
        .into_par_iter()
        .flat_map_iter(|(delta0, delta1)| {
            (0u32..1 << k).filter_map(move |mask| {
                let accepting: Vec<bool> = (0..k).map(|q| mask >> q & 1 == 1).collect();
                let d = Dfa::from_parts(0, delta0.clone(), delta1.clone(), accepting);
                let blocks = hopcroft(&d).into_iter().max().map_or(0, |m| m + 1);
                (blocks == k).then(|| (d.key_unchecked(), d))
            })
        })
        .collect();
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(ConceptBatch {
        k,
        concepts: keyed.into_iter().map(|(_, d)| d).collect(),
    })
}

fn check_k(k: usize, cap: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "batch index k must be at least 1".into(),
        ));
    }
    if k > cap {
        return Err(Error::ResourceLimit {
            what: format!("enumeration of batch k={k}"),
            cap,
        });
    }
    Ok(())
}

/// Accessible transition skeletons on `k` states in canonical BFS numbering.
fn skeletons(k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn fill(
        k: usize,
        slot: usize,
        highest: usize,
        table: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if slot == 2 * k {
            if highest == k - 1 {
                let (d0, d1): (Vec<usize>, Vec<usize>) =
                    table.chunks(2).map(|pair| (pair[0], pair[1])).unzip();
                out.push((d0, d1));
            }
            return;
        }
        let state = slot / 2;
        if state > highest {
            return;
        }
        let limit = (highest + 1).min(k - 1);
        for target in 0..=limit {
            table.push(target);
            fill(k, slot + 1, highest.max(target), table, out);
            table.pop();
        }
    }

    let mut out = Vec::new();
    fill(k, 0, 0, &mut Vec::with_capacity(2 * k), &mut out);
    out
}

/// Lazily enumerated batches `C_1..=C_cap`, shared across computations.
#[derive(Debug)]
pub struct Catalog {
    cap: usize,
    batches: Vec<OnceLock<ConceptBatch>>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new(DEFAULT_ENUMERATION_CAP)
    }
}

impl Catalog {
    pub fn new(cap: usize) -> Self {
        Catalog {
            cap,
            batches: (0..cap).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn batch(&self, k: usize) -> Result<&ConceptBatch> {
        check_k(k, self.cap)?;
        Ok(self.batches[k - 1].get_or_init(|| {
            enumerate_batch(k, self.cap).expect("k already checked against the cap")
        }))
    }

    /// `N_{<=k}`: number of concepts in batches `1..=k`.
    pub fn count_up_to(&self, k: usize) -> Result<u64> {
        (1..=k)
            .map(|j| self.batch(j).map(|b| b.count() as u64))
            .sum()
    }

    /// A uniformly random member of `C_k`, determined by `(k, seed)`.
    ///
    /// Within the cap this indexes the enumerated batch. Above it, a total
    /// DFA on `k` states with start `0` is drawn with uniform transitions and
    /// acceptance bits and kept iff it is already accessible and minimal.
    /// Such a machine has trivial automorphism group, so each concept has
    /// exactly `(k-1)!` labelled preimages and the accepted draws are uniform
    /// over `C_k`.
    pub fn random_concept(&self, k: usize, seed: u64) -> Result<Dfa> {
        self.random_concept_with(k, seed, DEFAULT_SAMPLING_ATTEMPTS)
    }

    pub fn random_concept_with(&self, k: usize, seed: u64, max_attempts: usize) -> Result<Dfa> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "batch index k must be at least 1".into(),
            ));
        }
        let mut rng = concept_rng(k, seed);
        if k <= self.cap {
            let batch = self.batch(k)?;
            return Ok(batch.concepts[rng.gen_range(0..batch.count())].clone());
        }
        for _ in 0..max_attempts {
            let delta0 = (0..k).map(|_| rng.gen_range(0..k)).collect();
            let delta1 = (0..k).map(|_| rng.gen_range(0..k)).collect();
            let accepting = (0..k).map(|_| rng.gen::<bool>()).collect();
            let m = minimize(&Dfa::from_parts(0, delta0, delta1, accepting));
            if m.num_states() == k {
                return Ok(m);
            }
        }
        Err(Error::SamplingFailed {
            k,
            attempts: max_attempts,
        })
    }
}

fn concept_rng(k: usize, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}
