//! Learner, teacher, and posterior machinery under a complexity-derived bias.
//!
//! The learner prefers concepts with fewer minimal states. Given an example
//! set it returns the consistent concepts of the smallest complexity, and it
//! identifies a concept only when that set is a singleton. The teacher
//! searches for the smallest example set that makes the learner identify a
//! target.

mod examples;
mod learner;
mod tabular;
mod witness;

pub use examples::{parse_example_set, write_example_set, ExampleSet, LabeledExample};
pub use learner::{consistent, learn, LearnOutcome};
pub(crate) use tabular::combinations;
pub use tabular::{
    btd_tabular, parse_tabular_class, parse_tabular_examples, posterior, td_tabular, Posterior,
    TabularClass, TabularConcept, TabularExample,
};
pub use witness::{
    btd, btd_batch, default_pool_max_len, TeachingResult, DEFAULT_SIZE_CAP, MAX_POOL_LEN,
};
