//! Prefix codes, a toy tape machine, and Levin-style `Kt` search.

mod elias;
mod kt;
mod machine;
mod series;

pub use elias::{elias_decode, elias_encode, format_bits, parse_bits};
pub use kt::{
    for_each_program, kt_learn, kt_step_bound, kt_teach, KtBudgetRun, KtOutcome, KtTeachResult,
};
pub use machine::{run_tiny, trace_tiny, Halt, Instruction, RunResult, TinyProgram, TraceStep};
pub use series::{prop1_majorant, prop1_partial_sum, prop1_term, NkVariant, PROP1_BOUND};
