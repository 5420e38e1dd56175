//! Total DFAs over the binary alphabet `{0, 1}`.
//!
//! A concept is the language of a canonical DFA: minimal, every state
//! reachable, start state `0`, and states numbered in the order a
//! breadth-first traversal first visits them (symbol `0` explored before
//! symbol `1`). Two DFAs accept the same language exactly when their
//! canonical forms are identical, so [`CanonicalKey`] doubles as a concept
//! identifier.

mod dfa;
mod equivalence;
mod families;
mod format;
pub(crate) mod minimize;
mod string;

pub use dfa::{CanonicalKey, Dfa};
pub use equivalence::{distinguishing_string, equivalent};
pub use families::{all_strings, no_strings, staircase_pair};
pub use format::{parse_dfa, parse_dfa_records, write_dfa, write_dfa_records};
pub use minimize::minimize;
pub use string::BinaryString;
