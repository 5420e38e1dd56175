//! `teachdim`: command-line front end for the teaching-dimension workbench.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use teachdim::ErrorKind;

const FORMATS: &str = "\
FILE FORMATS
  Lines starting with `#` and blank lines are ignored everywhere. Every
  report starts with `#` lines, so DFA and example-set reports can be read
  back as input.

  DFA (`*.dfa`): states are 0-based; `t <state> <on 0> <on 1>`.
      dfa 1
      states 2
      start 0
      accept 1
      t 0 1 0
      t 1 1 0
  Several machines may be joined with `---` lines (output of `enumerate`).

  Example set (`*.ex`): one labelled word per line, `eps` is the empty word.
      + 1
      - 0
      - eps

  Tabular class (`*.class`): instance names, concepts as label rows with
  prior masses, and a rest mass followed by the fraction of it that stays
  consistent after each successive example.
      instances x1 x2 x3
      concept c1 001 0.30
      concept c2 010 1/4
      rest 0.45 1/2 1/3
  Tabular examples use instance names: `- x2`, `+ x3`.

  Distribution (`*.dist`):
      dist geometric r=1        V_k = ((3r+1)/r)(4+1/r)^-k
      dist geometric p=1/6      V_k = p(1-p)^(k-1)
  or explicit masses with an optional geometric tail
      dist custom
      batch 1 1/13
      batch 2 8/13
      batch 3 3/13
      tail geometric 1/14 from 4

  Tiny-machine programs are 0/1 literals, decoded 3 bits per opcode:
  000 MOVR, 001 MOVL, 010 WR0, 011 WR1, 100 BR0 <t>, 101 BR1 <t>,
  110 ACCEPT, 111 REJECT; branch targets are 1-based, Elias gamma coded.
  Example: 101011111110 is `BR1 3; REJECT; ACCEPT`.

EXIT STATUS
  0 success, 2 invalid input, 3 resource limit exceeded,
  4 no witness / search exhausted (the report is still printed).";

#[derive(Parser, Debug)]
#[command(name = "teachdim", version, about = "Teaching dimensions for regular languages", after_long_help = FORMATS)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit tables as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest batch that may be enumerated.
    #[arg(long, global = true, default_value_t = teachdim::DEFAULT_ENUMERATION_CAP)]
    enum_cap: usize,
}

#[derive(Args, Debug)]
struct TeachArgs {
    /// Canonical minimal DFA to teach.
    #[arg(long)]
    dfa: PathBuf,
    /// Longest word offered as an example [default: 2k-2].
    #[arg(long)]
    pool_max_len: Option<usize>,
    /// Largest witness searched exhaustively before falling back to greedy.
    #[arg(long, default_value_t = teachdim::teaching::DEFAULT_SIZE_CAP)]
    size_cap: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Profile {
    /// D_k = 2^(2k-1)
    Exponential,
    /// D_k = k^2
    Square,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Series {
    /// sum of V_k 2^(2k-1) for the geometric family, against 2(3r+1)
    Eq5,
    /// V_k = (1/6)(5/6)^(k-1) with D_k = k^2, converging to 66
    Fig12,
    /// the Elias-code series bounded by 1+sqrt(2)
    Prop1,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Variant {
    /// N = 2^(i-1)
    Half,
    /// N = 2^i
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimize a DFA into canonical form.
    Minimize { dfa: PathBuf },
    /// Decide whether two DFAs accept the same language.
    Equiv { a: PathBuf, b: PathBuf },
    /// Print the shortlex-least word on which two DFAs disagree.
    Distinguish { a: PathBuf, b: PathBuf },
    /// List every concept with exactly k states.
    Enumerate {
        #[arg(long)]
        k: usize,
    },
    /// Count the concepts with 1..=k-max states.
    Count {
        #[arg(long)]
        k_max: usize,
    },
    /// Smallest example set that makes the learner pick the concept.
    Btd(TeachArgs),
    /// Like `btd`, printing only the witness as an example-set file.
    Teach(TeachArgs),
    /// Teaching dimension of every concept with k states.
    BtdBatch {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        pool_max_len: Option<usize>,
        #[arg(long, default_value_t = teachdim::teaching::DEFAULT_SIZE_CAP)]
        size_cap: usize,
    },
    /// Run the simplicity-biased learner on an example set.
    Learn {
        #[arg(long)]
        examples: PathBuf,
        #[arg(long)]
        k_max: usize,
    },
    /// Posterior masses of a tabular class after each example.
    Posterior {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        examples: PathBuf,
    },
    /// Classical teaching dimension of each concept of a tabular class.
    TdTabular {
        #[arg(long)]
        class: PathBuf,
        /// Only report this concept.
        #[arg(long)]
        concept: Option<String>,
    },
    /// Biased teaching dimension of each concept of a tabular class.
    BtdTabular {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        concept: Option<String>,
    },
    /// Bound on the expected teaching dimension under a distribution.
    ExpectedBtd {
        #[arg(long)]
        dist: PathBuf,
        /// Replace the bound for batches 1..=K by enumerated values.
        #[arg(long)]
        exact_k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Profile::Exponential)]
        profile: Profile,
        /// Number of listed terms.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Also state whether the total is below this value.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        pool_max_len: Option<usize>,
        #[arg(long, default_value_t = teachdim::teaching::DEFAULT_SIZE_CAP)]
        size_cap: usize,
    },
    /// Monte Carlo estimate of the expected teaching dimension.
    McExpectedBtd {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Draws from larger batches count as zero.
        #[arg(long, default_value_t = 3)]
        k_cap: usize,
        #[arg(long)]
        pool_max_len: Option<usize>,
        #[arg(long, default_value_t = teachdim::teaching::DEFAULT_SIZE_CAP)]
        size_cap: usize,
    },
    /// Tabulate one of the reference series.
    Series {
        #[arg(long, value_enum)]
        which: Series,
        /// Parameters for `eq5`.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 10.0])]
        r: Vec<f64>,
        /// Listed terms for `fig12`.
        #[arg(long, default_value_t = 30)]
        terms: usize,
        /// Last index for `prop1`.
        #[arg(long, default_value_t = 60)]
        i_max: u32,
        #[arg(long, value_enum, default_value_t = Variant::Half)]
        variant: Variant,
    },
    /// Elias gamma codes.
    #[command(subcommand)]
    Elias(Elias),
    /// Search the shortest fast tiny-machine program consistent with examples.
    KtLearn {
        #[arg(long)]
        examples: PathBuf,
        #[arg(long, default_value_t = 20)]
        budget: u32,
        /// Include a step-by-step trace on every example.
        #[arg(long)]
        trace: bool,
    },
    /// Search a small example set from which kt-learn recovers a DFA's language.
    KtTeach {
        #[arg(long)]
        dfa: PathBuf,
        #[arg(long, default_value_t = 2)]
        pool_max_len: usize,
        #[arg(long, default_value_t = 16)]
        budget: u32,
        #[arg(long, default_value_t = 2)]
        size_cap: usize,
    },
    /// Disassemble a tiny-machine program and trace it on inputs.
    RunTiny {
        program: String,
        /// Input word; repeat for several.
        #[arg(long)]
        input: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        step_cap: u64,
    },
    /// Check that per-concept sampling mass never increases with k.
    ValidateDist {
        #[arg(long)]
        dist: PathBuf,
        /// Batches whose sizes are enumerated [default: --enum-cap].
        #[arg(long)]
        k_max: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum Elias {
    Encode {
        #[arg(required = true)]
        values: Vec<u64>,
    },
    /// Decode a concatenation of codewords.
    Decode { bits: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = format!(
        "config: {:?}\nseed: {} enum_cap: {} csv: {}",
        cli.command, cli.global.seed, cli.global.enum_cap, cli.global.csv
    );
    match commands::run(&cli, &config) {
        Ok((text, code)) => match emit(&cli, &text) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("teachdim: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("teachdim: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Resource => 3,
                ErrorKind::Outcome => 4,
            })
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.global.output {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())
        }
    }
}
