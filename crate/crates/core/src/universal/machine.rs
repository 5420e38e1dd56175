//! A one-tape toy machine with self-delimiting programs.
//!
//! Programs are streams of 3-bit opcodes:
//!
//! | bits | instruction |
//! |------|-------------|
//! | 000  | `MOVR` move right (tape grows with blanks) |
//! | 001  | `MOVL` move left (no-op at cell 0) |
//! | 010  | `WR0` write 0 |
//! | 011  | `WR1` write 1 |
//! | 100  | `BR0 t` jump to instruction `t` if the cell holds 0 |
//! | 101  | `BR1 t` jump to instruction `t` if the cell holds 1 |
//! | 110  | `ACCEPT` |
//! | 111  | `REJECT` |
//!
//! Branch targets are 1-based instruction numbers in Elias gamma code. A
//! blank cell takes neither branch. Running past the last instruction
//! rejects. Every executed instruction costs one step.
//!
//! A program ends at the first instruction boundary where every branch
//! target seen so far is in range. Decoding must consume the whole
//! bitstring, so no valid program is a proper prefix of another.

use std::fmt;

use crate::automata::BinaryString;
use crate::error::{Error, Result};

use super::elias::{elias_decode, elias_encode, format_bits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    MoveRight,
    MoveLeft,
    Write0,
    Write1,
    Branch0(u32),
    Branch1(u32),
    Accept,
    Reject,
}

impl Instruction {
    pub fn target(self) -> Option<u32> {
        match self {
            Instruction::Branch0(t) | Instruction::Branch1(t) => Some(t),
            _ => None,
        }
    }

    pub fn encode(self) -> Vec<bool> {
        let op: u8 = match self {
            Instruction::MoveRight => 0,
            Instruction::MoveLeft => 1,
            Instruction::Write0 => 2,
            Instruction::Write1 => 3,
            Instruction::Branch0(_) => 4,
            Instruction::Branch1(_) => 5,
            Instruction::Accept => 6,
            Instruction::Reject => 7,
        };
        let mut bits: Vec<bool> = (0..3).rev().map(|b| (op >> b) & 1 == 1).collect();
        if let Some(t) = self.target() {
            bits.extend(elias_encode(u64::from(t)));
        }
        bits
    }

    fn mnemonic(self) -> &'static str {
        match self {
            Instruction::MoveRight => "MOVR",
            Instruction::MoveLeft => "MOVL",
            Instruction::Write0 => "WR0",
            Instruction::Write1 => "WR1",
            Instruction::Branch0(_) => "BR0",
            Instruction::Branch1(_) => "BR1",
            Instruction::Accept => "ACCEPT",
            Instruction::Reject => "REJECT",
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.target() {
            Some(t) => write!(f, "{} {t}", self.mnemonic()),
            None => f.write_str(self.mnemonic()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TinyProgram {
    bits: Vec<bool>,
    instructions: Vec<Instruction>,
}

impl TinyProgram {
    pub fn decode(bits: &[bool]) -> Result<Self> {
        let mut instructions = Vec::new();
        let mut pos = 0;
        let mut max_target = 0u64;
        loop {
            if bits.len() < pos + 3 {
                return Err(Error::Decode(format!("truncated instruction at bit {pos}")));
            }
            let op = bits[pos..pos + 3]
                .iter()
                .fold(0u8, |acc, &b| (acc << 1) | u8::from(b));
            pos += 3;
            let ins = match op {
                0 => Instruction::MoveRight,
                1 => Instruction::MoveLeft,
                2 => Instruction::Write0,
                3 => Instruction::Write1,
                6 => Instruction::Accept,
                7 => Instruction::Reject,
                _ => {
                    let (t, used) = elias_decode(&bits[pos..])?;
                    pos += used;
                    let t = u32::try_from(t)
                        .map_err(|_| Error::Decode("branch target too large".into()))?;
                    max_target = max_target.max(u64::from(t));
                    if op == 4 {
                        Instruction::Branch0(t)
                    } else {
                        Instruction::Branch1(t)
                    }
                }
            };
            instructions.push(ins);
            if max_target <= instructions.len() as u64 {
                break;
            }
        }
        if pos != bits.len() {
            return Err(Error::Decode(format!(
                "program ends after {pos} bits but {} were given",
                bits.len()
            )));
        }
        Ok(TinyProgram {
            bits: bits.to_vec(),
            instructions,
        })
    }

    /// Assembles a complete program; fails unless the instructions form
    /// exactly one self-delimited program.
    pub fn assemble(instructions: &[Instruction]) -> Result<Self> {
        let bits: Vec<bool> = instructions.iter().flat_map(|i| i.encode()).collect();
        TinyProgram::decode(&bits)
    }

    pub(crate) fn from_parts(bits: Vec<bool>, instructions: Vec<Instruction>) -> Self {
        TinyProgram { bits, instructions }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `ℓ(p)`: length in bits.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    /// One `pc opcode [target]` line per instruction, `pc` counted from 1.
    pub fn disassemble(&self) -> String {
        self.instructions
            .iter()
            .enumerate()
            .map(|(i, ins)| format!("{} {ins}\n", i + 1))
            .collect()
    }
}

impl fmt::Display for TinyProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(&self.bits))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    Accept,
    Reject,
    Timeout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub halt: Halt,
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: u64,
    /// 1-based instruction number.
    pub pc: usize,
    pub instruction: Instruction,
    pub head: usize,
    /// Cell under the head before executing: `Some(bit)` or `None` (blank).
    pub cell: Option<bool>,
}

const BLANK: u8 = 2;

pub fn run_tiny(p: &TinyProgram, input: &BinaryString, step_cap: u64) -> RunResult {
    execute(p, input, step_cap, |_| {})
}

/// Runs like [`run_tiny`] and records every executed instruction.
pub fn trace_tiny(
    p: &TinyProgram,
    input: &BinaryString,
    step_cap: u64,
) -> (RunResult, Vec<TraceStep>) {
    let mut steps = Vec::new();
    let r = execute(p, input, step_cap, |s| steps.push(s));
    (r, steps)
}

fn execute(
    p: &TinyProgram,
    input: &BinaryString,
    step_cap: u64,
    mut observe: impl FnMut(TraceStep),
) -> RunResult {
    let mut tape: Vec<u8> = input.bits().iter().map(|&b| u8::from(b)).collect();
    if tape.is_empty() {
        tape.push(BLANK);
    }
    let (mut head, mut pc, mut steps) = (0usize, 0usize, 0u64);
    let program = &p.instructions;
    loop {
        let Some(&ins) = program.get(pc) else {
            return RunResult {
                halt: Halt::Reject,
                steps,
            };
        };
        if steps == step_cap {
            return RunResult {
                halt: Halt::Timeout,
                steps,
            };
        }
        observe(TraceStep {
            step: steps + 1,
            pc: pc + 1,
            instruction: ins,
            head,
            cell: (tape[head] != BLANK).then_some(tape[head] == 1),
        });
        steps += 1;
        pc += 1;
        match ins {
            Instruction::MoveRight => {
                head += 1;
                if head == tape.len() {
                    tape.push(BLANK);
                }
            }
            Instruction::MoveLeft => head = head.saturating_sub(1),
            Instruction::Write0 => tape[head] = 0,
            Instruction::Write1 => tape[head] = 1,
            Instruction::Branch0(t) if tape[head] == 0 => pc = t as usize - 1,
            Instruction::Branch1(t) if tape[head] == 1 => pc = t as usize - 1,
            Instruction::Branch0(_) | Instruction::Branch1(_) => {}
            Instruction::Accept => {
                return RunResult {
                    halt: Halt::Accept,
                    steps,
                }
            }
            Instruction::Reject => {
                return RunResult {
                    halt: Halt::Reject,
                    steps,
                }
            }
        }
    }
}
