//! Biased teaching dimensions for regular languages.
//!
//! Concepts are binary regular languages, each identified with its canonical
//! minimal DFA. The learner prefers concepts with fewer states. Under that
//! preference the crate computes minimal teaching sets (witnesses), learner
//! outcomes, posteriors over explicitly tabulated classes, and expected
//! teaching dimensions under batch sampling distributions.
//!
//! The [`universal`] module holds the prefix-code side: Elias gamma codes,
//! a small tape machine with self-delimiting programs, and a Levin-style
//! `Kt` learner that searches programs under a growing budget.

pub mod automata;
pub mod enumeration;
mod error;
mod rational;
pub mod sampling;
pub mod teaching;
pub mod universal;

pub use automata::{BinaryString, CanonicalKey, Dfa};
pub use enumeration::{Catalog, ConceptBatch, DEFAULT_ENUMERATION_CAP};
pub use error::{Error, ErrorKind, Result};
