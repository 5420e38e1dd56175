//! Line-based DFA text format.
//!
//! ```text
//! dfa 1
//! states 2
//! start 0
//! accept 1
//! t 0 1 0
//! t 1 1 0
//! ```
//!
//! Transition lines `t <state> <dest0> <dest1>` may appear in any order but
//! each state needs exactly one. Blank lines and lines starting with `#` are
//! ignored. Several machines may be concatenated with `---` separator lines.

use std::fmt::Write;

use crate::error::{Error, Result};

use super::Dfa;

pub fn write_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    let accept: Vec<String> = d.accepting_states().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "dfa 1");
    let _ = writeln!(out, "states {}", d.num_states());
    let _ = writeln!(out, "start {}", d.start());
    if accept.is_empty() {
        let _ = writeln!(out, "accept");
    } else {
        let _ = writeln!(out, "accept {}", accept.join(" "));
    }
    for q in 0..d.num_states() {
        let _ = writeln!(out, "t {q} {} {}", d.next(q, false), d.next(q, true));
    }
    out
}

pub fn write_dfa_records<'a>(machines: impl IntoIterator<Item = &'a Dfa>) -> String {
    machines
        .into_iter()
        .map(write_dfa)
        .collect::<Vec<_>>()
        .join("---\n")
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    parse_lines(&lines, text.lines().count())
}

/// Parses machines separated by `---` lines.
pub fn parse_dfa_records(text: &str) -> Result<Vec<Dfa>> {
    let mut records = Vec::new();
    let mut current: Vec<(usize, &str)> = Vec::new();
    let total = text.lines().count();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line == "---" {
            records.push(parse_lines(&current, i + 1)?);
            current.clear();
        } else if !line.is_empty() && !line.starts_with('#') {
            current.push((i + 1, line));
        }
    }
    if !current.is_empty() {
        records.push(parse_lines(&current, total)?);
    }
    Ok(records)
}

fn parse_lines(lines: &[(usize, &str)], end_line: usize) -> Result<Dfa> {
    let mut it = lines.iter().copied();
    let mut expect = |keyword: &str| -> Result<(usize, Vec<&str>)> {
        let (n, line) = it
            .next()
            .ok_or_else(|| Error::parse(end_line, format!("missing `{keyword}` line")))?;
        let mut words = line.split_whitespace();
        if words.next() != Some(keyword) {
            return Err(Error::parse(n, format!("expected `{keyword}`")));
        }
        Ok((n, words.collect()))
    };

    let (n, version) = expect("dfa")?;
    if version != ["1"] {
        return Err(Error::parse(n, "unsupported format version"));
    }
    let (n, states) = expect("states")?;
    let k = match states.as_slice() {
        [v] => number(n, v)?,
        _ => return Err(Error::parse(n, "expected `states <k>`")),
    };
    if k == 0 {
        return Err(Error::parse(n, "a DFA needs at least one state"));
    }
    let (n, start) = expect("start")?;
    let start = match start.as_slice() {
        [v] => state(n, v, k)?,
        _ => return Err(Error::parse(n, "expected `start <state>`")),
    };
    let (n, accept_words) = expect("accept")?;
    let mut accepting = vec![false; k];
    for w in accept_words {
        accepting[state(n, w, k)?] = true;
    }

    let mut delta0 = vec![None; k];
    let mut delta1 = vec![None; k];
    for (n, line) in it {
        let words: Vec<&str> = line.split_whitespace().collect();
        let [t, q, d0, d1] = words.as_slice() else {
            return Err(Error::parse(n, "expected `t <state> <dest0> <dest1>`"));
        };
        if *t != "t" {
            return Err(Error::parse(n, "expected a transition line"));
        }
        let q = state(n, q, k)?;
        if delta0[q].is_some() {
            return Err(Error::parse(
                n,
                format!("duplicate transitions for state {q}"),
            ));
        }
        delta0[q] = Some(state(n, d0, k)?);
        delta1[q] = Some(state(n, d1, k)?);
    }
    let collect = |table: Vec<Option<usize>>| -> Result<Vec<usize>> {
        table
            .into_iter()
            .enumerate()
            .map(|(q, t)| {
                t.ok_or_else(|| {
                    Error::parse(end_line, format!("missing transitions for state {q}"))
                })
            })
            .collect()
    };
    Dfa::new(start, collect(delta0)?, collect(delta1)?, accepting)
}

fn number(line: usize, word: &str) -> Result<usize> {
    word.parse()
        .map_err(|_| Error::parse(line, format!("`{word}` is not a non-negative integer")))
}

fn state(line: usize, word: &str, k: usize) -> Result<usize> {
    let q = number(line, word)?;
    if q >= k {
        return Err(Error::parse(
            line,
            format!("state {q} out of range for {k} states"),
        ));
    }
    Ok(q)
}
