use crate::automata::Dfa;
use crate::enumeration::Catalog;
use crate::error::Result;

use super::ExampleSet;

/// `d ⊨ S`: the machine labels every example as given. Every machine
/// satisfies the empty set.
pub fn consistent(d: &Dfa, examples: &ExampleSet) -> bool {
    examples.iter().all(|(w, label)| d.run(w) == label)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnOutcome {
    Identified(Dfa),
    /// Several consistent concepts share the smallest complexity.
    Ambiguous(Vec<Dfa>),
    NoneConsistent,
}

impl LearnOutcome {
    pub fn identified(&self) -> Option<&Dfa> {
        match self {
            LearnOutcome::Identified(d) => Some(d),
            _ => None,
        }
    }
}

/// Bias-maximal consistent concepts among batches `1..=k_max`.
///
/// Batches are scanned in increasing complexity; the first batch holding a
/// consistent concept decides the outcome. Ties are reported, never broken.
pub fn learn(catalog: &Catalog, examples: &ExampleSet, k_max: usize) -> Result<LearnOutcome> {
    for k in 1..=k_max {
        let mut hits: Vec<Dfa> = catalog
            .batch(k)?
            .concepts()
            .iter()
            .filter(|d| consistent(d, examples))
            .cloned()
            .collect();
        match hits.len() {
            0 => continue,
            1 => return Ok(LearnOutcome::Identified(hits.pop().unwrap())),
            _ => return Ok(LearnOutcome::Ambiguous(hits)),
        }
    }
    Ok(LearnOutcome::NoneConsistent)
}
