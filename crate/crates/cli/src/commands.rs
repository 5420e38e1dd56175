use std::path::Path;

use num::{BigRational, ToPrimitive};
use teachdim::automata::{
    distinguishing_string, equivalent, minimize, parse_dfa, write_dfa, write_dfa_records,
};
use teachdim::sampling::{
    expected_btd_bound, expected_btd_exact, expected_btd_mc, parse_distribution, validate_monotone,
    BatchDistribution, BtdBoundProfile, McOptions,
};
use teachdim::teaching::{
    btd, btd_batch, btd_tabular, default_pool_max_len, learn, parse_example_set,
    parse_tabular_class, parse_tabular_examples, posterior, td_tabular, write_example_set,
    ExampleSet, LearnOutcome, TabularClass, TeachingResult,
};
use teachdim::universal::{
    elias_decode, elias_encode, format_bits, kt_learn, kt_step_bound, kt_teach, parse_bits,
    prop1_majorant, prop1_partial_sum, prop1_term, trace_tiny, Halt, KtOutcome, NkVariant,
    TinyProgram, PROP1_BOUND,
};
use teachdim::{BinaryString, Catalog, Dfa, Error, ErrorKind, Result};

use crate::report::Report;
use crate::{Cli, Command, Elias, Profile, Series, TeachArgs, Variant};

/// Runs the command and returns the report with its exit status.
pub fn run(cli: &Cli, config: &str) -> Result<(String, u8)> {
    let mut report = Report::new(cli.global.csv, config);
    match dispatch(cli, &mut report) {
        Ok(code) => Ok((report.finish(), code)),
        Err(e) if e.kind() == ErrorKind::Outcome => {
            report.field("status", "failed");
            report.field("reason", &e);
            Ok((report.finish(), 4))
        }
        Err(e) => Err(e),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

/// Reads and parses a file, naming it in any parse error.
fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T>) -> Result<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse { .. } => Error::InvalidArgument(format!("{}: {e}", path.display())),
        other => other,
    })
}

fn load_dfa(path: &Path) -> Result<Dfa> {
    load(path, parse_dfa)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ratio(r: &BigRational) -> String {
    r.to_string()
}

fn decimal(r: &BigRational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_g(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e9) {
        format!("{x:.6e}")
    } else {
        format!("{x:.6}")
    }
}

/// `+1 -0 -eps` on one line.
fn inline_set(s: &ExampleSet) -> String {
    let words: Vec<String> = s
        .iter()
        .map(|(w, l)| format!("{}{}", if l { '+' } else { '-' }, w))
        .collect();
    if words.is_empty() {
        "{}".into()
    } else {
        words.join(" ")
    }
}

fn dispatch(cli: &Cli, r: &mut Report) -> Result<u8> {
    let cap = cli.global.enum_cap;
    match &cli.command {
        Command::Minimize { dfa } => {
            let d = minimize(&load_dfa(dfa)?);
            r.raw(write_dfa(&d));
        }
        Command::Equiv { a, b } => {
            let (a, b) = (load_dfa(a)?, load_dfa(b)?);
            r.field("equivalent", yes_no(equivalent(&a, &b)));
            if let Some(w) = distinguishing_string(&a, &b) {
                r.field("witness", w);
            }
        }
        Command::Distinguish { a, b } => {
            let (a, b) = (load_dfa(a)?, load_dfa(b)?);
            match distinguishing_string(&a, &b) {
                Some(w) => {
                    r.comment(format!(
                        "length {}; first accepts: {}",
                        w.len(),
                        yes_no(a.run(&w))
                    ));
                    r.raw(w.to_string());
                }
                None => {
                    r.comment("the machines are equivalent");
                    r.raw("none");
                }
            }
        }
        Command::Enumerate { k } => {
            let catalog = Catalog::new(cap);
            let batch = catalog.batch(*k)?;
            r.comment(format!("{} concepts with {k} states", batch.count()));
            r.raw(write_dfa_records(batch.concepts()));
        }
        Command::Count { k_max } => {
            let catalog = Catalog::new(cap);
            let mut rows = Vec::new();
            for k in 1..=*k_max {
                rows.push(vec![k.to_string(), catalog.batch(k)?.count().to_string()]);
            }
            r.table(&["k", "count"], &rows);
        }
        Command::Btd(args) => {
            let res = teach(args, cap)?;
            r.field("states", res.1);
            r.field("pool_max_len", res.0.pool_max_len);
            r.field("dimension", res.0.dimension);
            r.field("exact", yes_no(res.0.exact));
            r.comment("witness");
            r.raw(write_example_set(&res.0.witness));
        }
        Command::Teach(args) => {
            let (res, _) = teach(args, cap)?;
            r.comment(format!(
                "dimension {} exact {}",
                res.dimension,
                yes_no(res.exact)
            ));
            r.raw(write_example_set(&res.witness));
        }
        Command::BtdBatch {
            k,
            pool_max_len,
            size_cap,
        } => {
            let catalog = Catalog::new(cap);
            let results = btd_batch(&catalog, *k, *pool_max_len, *size_cap)?;
            let rows: Vec<Vec<String>> = results
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    vec![
                        i.to_string(),
                        t.dimension.to_string(),
                        yes_no(t.exact).into(),
                        inline_set(&t.witness),
                    ]
                })
                .collect();
            r.table(&["index", "dimension", "exact", "witness"], &rows);
            let total: usize = results.iter().map(|t| t.dimension).sum();
            r.field("concepts", results.len());
            r.field("mean", fmt_f(total as f64 / results.len() as f64));
            r.field(
                "max",
                results.iter().map(|t| t.dimension).max().unwrap_or(0),
            );
            r.field("bound", fmt_g(BtdBoundProfile::default().value(*k)));
            r.field("all_exact", yes_no(results.iter().all(|t| t.exact)));
        }
        Command::Learn { examples, k_max } => {
            let set = load(examples, parse_example_set)?;
            let catalog = Catalog::new(cap);
            match learn(&catalog, &set, *k_max)? {
                // Kept as comments so the report reads back as a DFA file.
                LearnOutcome::Identified(d) => {
                    r.comment("outcome identified");
                    r.comment(format!("states {}", d.num_states()));
                    r.raw(write_dfa(&d));
                }
                LearnOutcome::Ambiguous(ds) => {
                    r.comment("outcome ambiguous");
                    r.comment(format!("states {}", ds[0].num_states()));
                    r.comment(format!("candidates {}", ds.len()));
                    r.raw(write_dfa_records(&ds));
                }
                LearnOutcome::NoneConsistent => {
                    r.comment("outcome none-consistent");
                }
            }
        }
        Command::Posterior { class, examples } => {
            let class = load(class, parse_tabular_class)?;
            let examples = load(examples, parse_tabular_examples)?;
            posterior_report(r, &class, &examples)?;
        }
        Command::TdTabular { class, concept } | Command::BtdTabular { class, concept } => {
            let biased = matches!(cli.command, Command::BtdTabular { .. });
            let class = load(class, parse_tabular_class)?;
            let names: Vec<&str> = match concept {
                Some(c) => vec![c.as_str()],
                None => class.concepts.iter().map(|c| c.name.as_str()).collect(),
            };
            let mut rows = Vec::new();
            for name in names {
                let dim = if biased {
                    btd_tabular(&class, name)
                } else {
                    td_tabular(&class, name)
                };
                let cell = match dim {
                    Ok(d) => d.to_string(),
                    Err(Error::NoWitness(_)) => "none".into(),
                    Err(e) => return Err(e),
                };
                let mass = &class.concepts[class.concept_index(name)?].mass;
                rows.push(vec![name.to_string(), decimal(mass), cell]);
            }
            r.table(
                &["concept", "mass", if biased { "btd" } else { "td" }],
                &rows,
            );
        }
        Command::ExpectedBtd {
            dist,
            exact_k,
            profile,
            terms,
            threshold,
            pool_max_len,
            size_cap,
        } => {
            let dist = load(dist, parse_distribution)?;
            let profile = match profile {
                Profile::Exponential => BtdBoundProfile::default(),
                Profile::Square => BtdBoundProfile::Square,
            };
            let total = match exact_k {
                None => {
                    let rep = expected_btd_bound(&dist, &profile, *terms)?;
                    let rows: Vec<Vec<String>> = rep
                        .rows
                        .iter()
                        .map(|row| {
                            vec![
                                row.k.to_string(),
                                fmt_g(row.mass),
                                fmt_g(row.bound),
                                fmt_g(row.product),
                                fmt_f(row.cumulative),
                            ]
                        })
                        .collect();
                    r.table(&["k", "V_k", "D_k", "V_k*D_k", "cumulative"], &rows);
                    r.field("listed", fmt_f(rep.partial));
                    r.field("tail", fmt_f(rep.tail));
                    r.field("total", fmt_f(rep.total));
                    rep.total
                }
                Some(k_max) => {
                    let catalog = Catalog::new(cap);
                    let rep = expected_btd_exact(
                        &catalog,
                        &dist,
                        &profile,
                        *k_max,
                        *pool_max_len,
                        *size_cap,
                    )?;
                    let rows: Vec<Vec<String>> = rep
                        .batches
                        .iter()
                        .map(|b| {
                            vec![
                                b.k.to_string(),
                                b.count.to_string(),
                                fmt_g(b.mass),
                                b.mean_btd.map_or("-".into(), fmt_f),
                                b.max_btd.map_or("-".into(), |m| m.to_string()),
                                fmt_g(profile.value(b.k)),
                                yes_no(b.all_exact).into(),
                            ]
                        })
                        .collect();
                    r.table(&["k", "count", "V_k", "mean", "max", "D_k", "exact"], &rows);
                    r.field("enumerated", fmt_f(rep.exact_part));
                    r.field("tail", fmt_f(rep.tail_bound));
                    r.field("total", fmt_f(rep.total));
                    r.field("exact", yes_no(rep.exact));
                    rep.total
                }
            };
            if let Some(t) = threshold {
                let op = if total < *t { "<" } else { ">=" };
                r.field("bound", format!("{} {op} {t}", fmt_f(total)));
            }
        }
        Command::McExpectedBtd {
            dist,
            samples,
            k_cap,
            pool_max_len,
            size_cap,
        } => {
            let dist = load(dist, parse_distribution)?;
            let catalog = Catalog::new(cap);
            let opts = McOptions {
                samples: *samples,
                seed: cli.global.seed,
                k_cap: *k_cap,
                pool_max_len: *pool_max_len,
                size_cap: *size_cap,
            };
            let rep = expected_btd_mc(&catalog, &dist, &opts)?;
            r.comment(format!("draws from batches above {k_cap} count as zero"));
            r.field("samples", rep.samples);
            r.field("mean", fmt_f(rep.mean));
            r.field("std_error", fmt_f(rep.std_error));
            r.field("beyond_cap", rep.beyond_cap);
            r.field("inexact", rep.inexact);
        }
        Command::Series {
            which,
            r: rs,
            terms,
            i_max,
            variant,
        } => series(r, *which, rs, *terms, *i_max, *variant)?,
        Command::Elias(Elias::Encode { values }) => {
            let mut rows = Vec::new();
            for &n in values {
                if n == 0 {
                    return Err(Error::InvalidArgument(
                        "Elias gamma codes start at 1".into(),
                    ));
                }
                let code = elias_encode(n);
                rows.push(vec![
                    n.to_string(),
                    code.len().to_string(),
                    format_bits(&code),
                ]);
            }
            r.table(&["n", "length", "code"], &rows);
        }
        Command::Elias(Elias::Decode { bits }) => {
            let bits = parse_bits(bits)?;
            let mut pos = 0;
            let mut rows = Vec::new();
            while pos < bits.len() {
                let (n, used) = elias_decode(&bits[pos..])?;
                rows.push(vec![
                    pos.to_string(),
                    format_bits(&bits[pos..pos + used]),
                    n.to_string(),
                ]);
                pos += used;
            }
            r.table(&["offset", "code", "n"], &rows);
        }
        Command::KtLearn {
            examples,
            budget,
            trace,
        } => {
            let set = load(examples, parse_example_set)?;
            let out = kt_learn(&set, *budget);
            r.field("examples", set.len());
            r.field("steps_executed", out.steps_executed());
            r.field("step_bound", kt_step_bound(*budget));
            match out {
                KtOutcome::Found { run, budget, .. } => {
                    r.field("status", "found");
                    r.field("budget", budget);
                    r.field("program", &run.program);
                    r.field("length", run.program.len());
                    r.field("total_steps", run.total_steps);
                    r.field("kt", fmt_f(run.kt));
                    r.comment("disassembly");
                    r.raw(run.program.disassemble());
                    if *trace {
                        let cap = 1u64 << (budget as usize - run.program.len()).min(62);
                        for (w, _) in set.iter() {
                            trace_report(r, &run.program, w, cap);
                        }
                    }
                }
                KtOutcome::Exhausted { budget_max, .. } => {
                    r.field("status", "exhausted");
                    r.field("budget", budget_max);
                    return Ok(4);
                }
            }
        }
        Command::KtTeach {
            dfa,
            pool_max_len,
            budget,
            size_cap,
        } => {
            let oracle = load_dfa(dfa)?;
            let res = kt_teach(&oracle, *pool_max_len, *budget, *size_cap)?;
            r.field("certified", yes_no(res.certified));
            r.comment(format!(
                "agreement with the oracle is only checked on words up to length {pool_max_len}"
            ));
            r.field("dimension", res.teaching.dimension);
            r.field("budget", res.budget);
            r.field("program", &res.run.program);
            r.field("kt", fmt_f(res.run.kt));
            r.comment("disassembly");
            r.raw(res.run.program.disassemble());
            r.comment("witness");
            r.raw(write_example_set(&res.teaching.witness));
        }
        Command::RunTiny {
            program,
            input,
            step_cap,
        } => {
            let p = TinyProgram::decode(&parse_bits(program)?)?;
            r.field("length", p.len());
            r.comment("disassembly");
            r.raw(p.disassemble());
            for w in input {
                let w: BinaryString = w.parse()?;
                trace_report(r, &p, &w, *step_cap);
            }
        }
        Command::ValidateDist { dist, k_max } => {
            let dist = load(dist, parse_distribution)?;
            let catalog = Catalog::new(cap);
            let k_max = k_max.unwrap_or(cap);
            let counts: Vec<u64> = (1..=k_max)
                .map(|k| catalog.batch(k).map(|b| b.count() as u64))
                .collect::<Result<_>>()?;
            let rep = validate_monotone(&dist, &counts);
            let rows: Vec<Vec<String>> = rep
                .per_concept
                .iter()
                .map(|&(k, v)| {
                    vec![
                        k.to_string(),
                        fmt_g(dist.mass(k)),
                        counts[k - 1].to_string(),
                        fmt_g(v),
                    ]
                })
                .collect();
            r.table(&["k", "V_k", "count", "per_concept"], &rows);
            r.field("monotone", yes_no(rep.monotone));
            if let Some(v) = rep.violation {
                r.field(
                    "violation",
                    format!(
                        "k={} {} < k={} {}",
                        v.k,
                        fmt_g(v.mass),
                        v.next,
                        fmt_g(v.next_mass)
                    ),
                );
            }
        }
    }
    Ok(0)
}

fn teach(args: &TeachArgs, cap: usize) -> Result<(TeachingResult, usize)> {
    let d = load_dfa(&args.dfa)?;
    let catalog = Catalog::new(cap);
    let k = d.num_states();
    let pool = args.pool_max_len.unwrap_or_else(|| default_pool_max_len(k));
    Ok((btd(&catalog, &d, pool, args.size_cap)?, k))
}

fn posterior_report(
    r: &mut Report,
    class: &TabularClass,
    examples: &[teachdim::teaching::TabularExample],
) -> Result<()> {
    let mut headers = vec![
        "step".to_string(),
        "example".into(),
        "rest".into(),
        "m_w".into(),
    ];
    headers.extend(class.concepts.iter().map(|c| c.name.clone()));
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut rows = Vec::new();
    let mut exact_rows = Vec::new();
    for n in 0..=examples.len() {
        let p = posterior(class, &examples[..n])?;
        let label = match n {
            0 => "-".to_string(),
            _ => {
                let e = &examples[n - 1];
                format!("{}{}", if e.label { '+' } else { '-' }, e.instance)
            }
        };
        let mut row = vec![
            n.to_string(),
            label.clone(),
            decimal(&p.rest_mass),
            decimal(&p.normalizer),
        ];
        row.extend(p.posteriors.iter().map(decimal));
        rows.push(row);
        let mut row = vec![
            n.to_string(),
            label,
            ratio(&p.rest_mass),
            ratio(&p.normalizer),
        ];
        row.extend(p.posteriors.iter().map(ratio));
        exact_rows.push(row);
    }
    r.comment("posterior probabilities");
    r.table(&headers, &rows);
    r.comment("exact values");
    r.table(&headers, &exact_rows);
    Ok(())
}

fn trace_report(r: &mut Report, p: &TinyProgram, w: &BinaryString, cap: u64) {
    let (res, steps) = trace_tiny(p, w, cap);
    let halt = match res.halt {
        Halt::Accept => "accept",
        Halt::Reject => "reject",
        Halt::Timeout => "timeout",
    };
    r.comment(format!("trace on {w}: {halt} after {} steps", res.steps));
    let rows: Vec<Vec<String>> = steps
        .iter()
        .map(|s| {
            vec![
                s.step.to_string(),
                s.pc.to_string(),
                s.instruction.to_string(),
                s.head.to_string(),
                s.cell.map_or("B".into(), |b| u8::from(b).to_string()),
            ]
        })
        .collect();
    r.table(&["step", "pc", "instruction", "head", "cell"], &rows);
}

fn series(
    r: &mut Report,
    which: Series,
    rs: &[f64],
    terms: usize,
    i_max: u32,
    variant: Variant,
) -> Result<()> {
    match which {
        Series::Eq5 => {
            let mut rows = Vec::new();
            for &x in rs {
                let d = BatchDistribution::geometric(x)?;
                let total = expected_btd_bound(&d, &BtdBoundProfile::default(), 0)?.total;
                let closed = 2.0 * (3.0 * x + 1.0);
                rows.push(vec![
                    format!("{x}"),
                    fmt_f(total),
                    fmt_f(closed),
                    fmt_g((total - closed).abs()),
                ]);
            }
            r.comment("V_k geometric in r, D_k = 2^(2k-1)");
            r.table(&["r", "sum", "2(3r+1)", "difference"], &rows);
        }
        Series::Fig12 => {
            let d = BatchDistribution::geometric_from_one(1.0 / 6.0)?;
            let rep = expected_btd_bound(&d, &BtdBoundProfile::Square, terms)?;
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.k.to_string(),
                        fmt_g(row.mass),
                        fmt_g(row.bound),
                        fmt_g(row.product),
                        fmt_f(row.cumulative),
                    ]
                })
                .collect();
            r.comment("V_k = (1/6)(5/6)^(k-1), D_k = k^2");
            r.table(&["k", "V_k", "D_k", "V_k*D_k", "cumulative"], &rows);
            r.field("tail", fmt_f(rep.tail));
            r.field("total", fmt_f(rep.total));
        }
        Series::Prop1 => {
            let v = match variant {
                Variant::Half => NkVariant::Half,
                Variant::Full => NkVariant::Full,
            };
            let rows: Vec<Vec<String>> = (0..=i_max)
                .map(|i| {
                    vec![
                        i.to_string(),
                        fmt_g(prop1_term(i, v)),
                        fmt_g(prop1_majorant(i)),
                        format!("{:.12}", prop1_partial_sum(i, v)),
                    ]
                })
                .collect();
            r.table(&["i", "term", "majorant", "partial_sum"], &rows);
            r.field("bound", format!("{PROP1_BOUND:.12}"));
        }
    }
    Ok(())
}
