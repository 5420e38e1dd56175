use crate::error::{Error, Result};

use super::minimize;
use super::BinaryString;

/// A total deterministic automaton over `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    start: usize,
    delta0: Vec<usize>,
    delta1: Vec<usize>,
    accepting: Vec<bool>,
}

/// Total order on canonical machines: state count, then the flattened
/// transition table `delta0 ‖ delta1`, then the acceptance vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    states: usize,
    transitions: Vec<u32>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        start: usize,
        delta0: Vec<usize>,
        delta1: Vec<usize>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let k = accepting.len();
        if k == 0 {
            return Err(Error::InvalidDfa("a DFA needs at least one state".into()));
        }
        if delta0.len() != k || delta1.len() != k {
            return Err(Error::InvalidDfa(format!(
                "transition tables have lengths {} and {}, expected {k}",
                delta0.len(),
                delta1.len()
            )));
        }
        if start >= k {
            return Err(Error::InvalidDfa(format!(
                "start state {start} out of range"
            )));
        }
        if let Some(&bad) = delta0.iter().chain(&delta1).find(|&&t| t >= k) {
            return Err(Error::InvalidDfa(format!(
                "transition target {bad} out of range"
            )));
        }
        Ok(Dfa {
            start,
            delta0,
            delta1,
            accepting,
        })
    }

    /// Builds without validation; callers guarantee totality.
    pub(crate) fn from_parts(
        start: usize,
        delta0: Vec<usize>,
        delta1: Vec<usize>,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert!(Dfa::new(start, delta0.clone(), delta1.clone(), accepting.clone()).is_ok());
        Dfa {
            start,
            delta0,
            delta1,
            accepting,
        }
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    #[inline]
    pub fn next(&self, state: usize, bit: bool) -> usize {
        if bit {
            self.delta1[state]
        } else {
            self.delta0[state]
        }
    }

    pub fn delta0(&self) -> &[usize] {
        &self.delta0
    }

    pub fn delta1(&self) -> &[usize] {
        &self.delta1
    }

    #[inline]
    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
    }

    /// State reached from `from` after reading `bits`.
    pub fn walk(&self, from: usize, bits: &[bool]) -> usize {
        bits.iter().fold(from, |q, &b| self.next(q, b))
    }

    /// Membership test: whether the word leads from the start to an
    /// accepting state.
    pub fn run(&self, word: &BinaryString) -> bool {
        self.accepting[self.walk(self.start, word.bits())]
    }

    /// Acceptance of every word in the shortlex pool `0..pool_size`, one bit
    /// per word (bit `i` is the word with shortlex index `i`).
    ///
    /// Word `i > 0` extends its parent `(i + 1) / 2 - 1` by the low bit of
    /// `i + 1`, so one pass over the pool suffices.
    pub fn pool_acceptance(&self, pool_size: usize) -> Vec<bool> {
        let mut states = Vec::with_capacity(pool_size);
        let mut out = Vec::with_capacity(pool_size);
        for i in 0..pool_size {
            let q = if i == 0 {
                self.start
            } else {
                let n = i + 1;
                self.next(states[n / 2 - 1], n & 1 == 1)
            };
            states.push(q);
            out.push(self.accepting[q]);
        }
        out
    }

    /// Whether the machine is in the canonical form produced by
    /// [`minimize`](super::minimize).
    pub fn is_canonical(&self) -> bool {
        minimize::minimize(self) == *self
    }

    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        if !self.is_canonical() {
            return Err(Error::NotCanonical);
        }
        Ok(self.key_unchecked())
    }

    pub(crate) fn key_unchecked(&self) -> CanonicalKey {
        CanonicalKey {
            states: self.num_states(),
            transitions: self
                .delta0
                .iter()
                .chain(&self.delta1)
                .map(|&t| t as u32)
                .collect(),
            accepting: self.accepting.clone(),
        }
    }
}

impl CanonicalKey {
    pub fn states(&self) -> usize {
        self.states
    }
}
