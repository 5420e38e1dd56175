//! `Kt(p, S) = ℓ(p) + log₂ Σ_{s∈S} τ(p, s)` and the dovetail search over it.

use crate::automata::{BinaryString, Dfa};
use crate::error::{Error, Result};
use crate::teaching::{ExampleSet, LabeledExample, TeachingResult};

use super::elias::elias_encode;
use super::machine::{run_tiny, Halt, Instruction, TinyProgram};

/// A program together with its run over an example set.
#[derive(Clone, Debug, PartialEq)]
pub struct KtBudgetRun {
    pub program: TinyProgram,
    pub example_set: ExampleSet,
    pub total_steps: u64,
    pub kt: f64,
}

impl KtBudgetRun {
    /// Runs `program` on every example. Returns `None` if the runs need
    /// more than `step_cap` steps in total.
    pub fn measure(program: &TinyProgram, set: &ExampleSet, step_cap: u64) -> Option<KtBudgetRun> {
        let mut total = 0u64;
        for (w, _) in set.iter() {
            let r = run_tiny(program, w, step_cap - total);
            if r.halt == Halt::Timeout {
                return None;
            }
            total += r.steps;
        }
        Some(KtBudgetRun {
            program: program.clone(),
            example_set: set.clone(),
            total_steps: total,
            kt: kt_value(program.len(), total),
        })
    }
}

/// `ℓ + log₂ steps`, with an empty step count treated as one step.
fn kt_value(len: usize, steps: u64) -> f64 {
    len as f64 + (steps.max(1) as f64).log2()
}

#[derive(Clone, Debug, PartialEq)]
pub enum KtOutcome {
    Found {
        run: KtBudgetRun,
        /// Smallest budget at which the program was reached.
        budget: u32,
        /// Interpreter steps spent over the whole search.
        steps_executed: u64,
    },
    Exhausted {
        budget_max: u32,
        steps_executed: u64,
    },
}

impl KtOutcome {
    pub fn steps_executed(&self) -> u64 {
        match self {
            KtOutcome::Found { steps_executed, .. }
            | KtOutcome::Exhausted { steps_executed, .. } => *steps_executed,
        }
    }

    pub fn run(&self) -> Option<&KtBudgetRun> {
        match self {
            KtOutcome::Found { run, .. } => Some(run),
            KtOutcome::Exhausted { .. } => None,
        }
    }
}

/// Calls `f` on every program of exactly `len` bits in lexicographic order
/// of the bitstrings. Stops early when `f` returns `false`.
pub fn for_each_program(len: usize, mut f: impl FnMut(&TinyProgram) -> bool) {
    let mut bits = Vec::with_capacity(len);
    let mut ins = Vec::new();
    walk(len, &mut bits, &mut ins, 0, &mut f);
}

fn tokens(room: usize) -> Vec<Instruction> {
    let mut out = vec![
        Instruction::MoveRight,
        Instruction::MoveLeft,
        Instruction::Write0,
        Instruction::Write1,
        Instruction::Accept,
        Instruction::Reject,
    ];
    let mut t = 1u32;
    while 3 + elias_encode(u64::from(t)).len() <= room {
        out.push(Instruction::Branch0(t));
        out.push(Instruction::Branch1(t));
        t += 1;
    }
    out.retain(|i| i.encode().len() <= room);
    // Codes are prefix-free, so sorting tokens by their bits sorts programs.
    out.sort_by_cached_key(|i| i.encode());
    out
}

fn walk(
    len: usize,
    bits: &mut Vec<bool>,
    ins: &mut Vec<Instruction>,
    max_target: u32,
    f: &mut impl FnMut(&TinyProgram) -> bool,
) -> bool {
    for tok in tokens(len - bits.len()) {
        let code = tok.encode();
        let target = max_target.max(tok.target().unwrap_or(0));
        let count = ins.len() + 1;
        let used = bits.len() + code.len();
        let closes = target as usize <= count;
        if closes {
            if used != len {
                continue;
            }
        } else if (target as usize - count) * 3 > len - used {
            continue;
        }
        bits.extend_from_slice(&code);
        ins.push(tok);
        let keep_going = if closes {
            f(&TinyProgram::from_parts(bits.clone(), ins.clone()))
        } else {
            walk(len, bits, ins, target, f)
        };
        ins.pop();
        bits.truncate(bits.len() - code.len());
        if !keep_going {
            return false;
        }
    }
    true
}

fn programs_of_length(len: usize) -> Vec<TinyProgram> {
    let mut out = Vec::new();
    for_each_program(len, |p| {
        out.push(p.clone());
        true
    });
    out
}

/// Runs `p` on `set` with a shared allowance. Returns the steps spent and
/// whether every label matched in time.
fn check(p: &TinyProgram, set: &ExampleSet, allowance: u64) -> (u64, bool) {
    let mut spent = 0;
    for (w, label) in set.iter() {
        let r = run_tiny(p, w, allowance - spent);
        spent += r.steps;
        let ok = match r.halt {
            Halt::Accept => label,
            Halt::Reject => !label,
            Halt::Timeout => false,
        };
        if !ok {
            return (spent, false);
        }
    }
    (spent, true)
}

/// Upper bound on the interpreter steps of `kt_learn(_, budget_max)`:
/// `Σ_{B ≤ budget_max} Σ_{ℓ < B} 2^ℓ · 2^(B−ℓ)`.
pub fn kt_step_bound(budget_max: u32) -> u128 {
    (1..=u128::from(budget_max)).map(|b| (b - 1) << b).sum()
}

/// Lazily built program lists, indexed by length.
#[derive(Default)]
struct ProgramTable {
    by_len: Vec<Vec<TinyProgram>>,
}

impl ProgramTable {
    fn get(&mut self, len: usize) -> &[TinyProgram] {
        while self.by_len.len() <= len {
            let l = self.by_len.len();
            self.by_len.push(programs_of_length(l));
        }
        &self.by_len[len]
    }
}

/// Dovetail search: for each budget `B = 1..=budget_max` try every program
/// with `ℓ < B` in length-then-lexicographic order, giving each a shared
/// allowance of `2^(B−ℓ)` steps over `set`.
pub fn kt_learn(set: &ExampleSet, budget_max: u32) -> KtOutcome {
    kt_learn_with(&mut ProgramTable::default(), set, budget_max)
}

fn kt_learn_with(table: &mut ProgramTable, set: &ExampleSet, budget_max: u32) -> KtOutcome {
    let mut steps_executed = 0u64;
    for b in 1..=budget_max {
        for len in 1..b as usize {
            let allowance = 1u64 << (b as usize - len);
            for p in table.get(len) {
                let (spent, ok) = check(p, set, allowance);
                steps_executed += spent;
                if ok {
                    let run = KtBudgetRun {
                        program: p.clone(),
                        example_set: set.clone(),
                        total_steps: spent,
                        kt: kt_value(len, spent),
                    };
                    return KtOutcome::Found {
                        run,
                        budget: b,
                        steps_executed,
                    };
                }
            }
        }
    }
    KtOutcome::Exhausted {
        budget_max,
        steps_executed,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KtTeachResult {
    /// `exact` is always `false`: agreement is only checked on the pool.
    pub teaching: TeachingResult,
    pub run: KtBudgetRun,
    pub budget: u32,
    pub certified: bool,
}

/// Smallest example set, drawn from the words up to `pool_max_len`
/// labelled by `oracle`, from which `kt_learn` recovers a program agreeing
/// with `oracle` on the whole pool. Sets are tried by size, then in
/// lexicographic order of their shortlex positions.
pub fn kt_teach(
    oracle: &Dfa,
    pool_max_len: usize,
    budget_max: u32,
    size_cap: usize,
) -> Result<KtTeachResult> {
    let pool: Vec<LabeledExample> = BinaryString::all_up_to(pool_max_len)
        .map(|w| {
            let label = oracle.run(&w);
            LabeledExample { instance: w, label }
        })
        .collect();
    let mut table = ProgramTable::default();
    for size in 0..=size_cap.min(pool.len()) {
        for idx in crate::teaching::combinations(pool.len(), size) {
            let set = ExampleSet::from_examples(idx.iter().map(|&i| pool[i].clone()))?;
            let KtOutcome::Found { run, budget, .. } = kt_learn_with(&mut table, &set, budget_max)
            else {
                continue;
            };
            let cap = 1u64 << (budget_max as usize - run.program.len()).min(62);
            let agrees = pool.iter().all(|e| {
                let r = run_tiny(&run.program, &e.instance, cap);
                r.halt == if e.label { Halt::Accept } else { Halt::Reject }
            });
            if agrees {
                return Ok(KtTeachResult {
                    teaching: TeachingResult {
                        witness: set,
                        dimension: size,
                        exact: false,
                        pool_max_len,
                    },
                    run,
                    budget,
                    certified: false,
                });
            }
        }
    }
    Err(Error::Exhausted(format!(
        "no example set of size at most {size_cap} over words up to length {pool_max_len} \
         lets the learner recover the oracle within budget {budget_max}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata as families;
    use crate::universal::{format_bits, parse_bits};

    fn set(items: &[(&str, bool)]) -> ExampleSet {
        ExampleSet::from_examples(items.iter().map(|&(w, l)| LabeledExample {
            instance: w.into(),
            label: l,
        }))
        .unwrap()
    }

    /// Every valid program of a length, by brute force over all bitstrings.
    fn brute_programs(len: usize) -> Vec<String> {
        (0u32..1 << len)
            .map(|n| {
                (0..len)
                    .rev()
                    .map(|b| (n >> b) & 1 == 1)
                    .collect::<Vec<bool>>()
            })
            .filter(|bits| TinyProgram::decode(bits).is_ok())
            .map(|bits| format_bits(&bits))
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for len in 0..=15 {
            let mut got = Vec::new();
            for_each_program(len, |p| {
                got.push(p.to_string());
                true
            });
            assert_eq!(got, brute_programs(len), "length {len}");
        }
    }

    #[test]
    fn empty_set_takes_the_first_program() {
        let KtOutcome::Found { run, budget, .. } = kt_learn(&ExampleSet::new(), 10) else {
            panic!("expected a program");
        };
        assert_eq!(run.program.to_string(), "000");
        assert_eq!(budget, 4);
        assert_eq!(run.total_steps, 0);
    }

    #[test]
    fn accept_empty_word() {
        let KtOutcome::Found { run, budget, .. } = kt_learn(&set(&[("eps", true)]), 10) else {
            panic!("expected a program");
        };
        assert_eq!(run.program.to_string(), "110");
        assert_eq!(budget, 4);
        assert_eq!(run.kt, 3.0);
    }

    #[test]
    fn starts_with_one() {
        let s = set(&[
            ("1", true),
            ("0", false),
            ("eps", false),
            ("11", true),
            ("01", false),
        ]);
        let hand = TinyProgram::decode(&parse_bits("101011111110").unwrap()).unwrap();
        let hand_run = KtBudgetRun::measure(&hand, &s, 1000).unwrap();
        assert_eq!(hand_run.total_steps, 10);
        let out = kt_learn(&s, 20);
        assert!(out.steps_executed() as u128 <= kt_step_bound(20));
        let run = out.run().expect("found");
        assert!(run.kt <= hand_run.kt, "{} > {}", run.kt, hand_run.kt);
        assert_eq!(
            check(&run.program, &s, run.total_steps),
            (run.total_steps, true)
        );
    }

    #[test]
    fn budget_too_small() {
        let out = kt_learn(&set(&[("eps", true)]), 3);
        assert_eq!(
            out,
            KtOutcome::Exhausted {
                budget_max: 3,
                steps_executed: 0
            }
        );
    }

    #[test]
    fn step_bound_small_values() {
        assert_eq!(kt_step_bound(1), 0);
        assert_eq!(kt_step_bound(2), 4);
        assert_eq!(kt_step_bound(3), 4 + 16);
    }

    #[test]
    fn teach_trivial_oracles() {
        let all = kt_teach(&families::all_strings(), 3, 8, 2).unwrap();
        assert!(all.teaching.dimension <= 2);
        assert!(!all.certified && !all.teaching.exact);
        let none = kt_teach(&families::no_strings(), 3, 8, 2).unwrap();
        assert_eq!(none.teaching.dimension, 0);
    }
}
