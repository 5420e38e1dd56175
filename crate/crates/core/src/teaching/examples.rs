use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automata::BinaryString;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledExample {
    pub instance: BinaryString,
    pub label: bool,
}

impl LabeledExample {
    pub fn positive(instance: impl Into<BinaryString>) -> Self {
        LabeledExample {
            instance: instance.into(),
            label: true,
        }
    }

    pub fn negative(instance: impl Into<BinaryString>) -> Self {
        LabeledExample {
            instance: instance.into(),
            label: false,
        }
    }
}

/// A finite set of labelled words, iterated in shortlex order of the words.
/// A word never carries both labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExampleSet {
    labels: BTreeMap<BinaryString, bool>,
}

impl ExampleSet {
    pub fn new() -> Self {
        ExampleSet::default()
    }

    /// Adds an example. Re-adding an identical example is a no-op; adding
    /// the opposite label for a known word fails.
    pub fn insert(&mut self, example: LabeledExample) -> Result<()> {
        match self.labels.get(&example.instance) {
            Some(&l) if l != example.label => {
                Err(Error::Contradiction(example.instance.to_string()))
            }
            Some(_) => Ok(()),
            None => {
                self.labels.insert(example.instance, example.label);
                Ok(())
            }
        }
    }

    pub fn from_examples(examples: impl IntoIterator<Item = LabeledExample>) -> Result<Self> {
        let mut set = ExampleSet::new();
        for e in examples {
            set.insert(e)?;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, instance: &BinaryString) -> Option<bool> {
        self.labels.get(instance).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BinaryString, bool)> + '_ {
        self.labels.iter().map(|(w, &l)| (w, l))
    }

    pub fn examples(&self) -> impl Iterator<Item = LabeledExample> + '_ {
        self.iter().map(|(w, label)| LabeledExample {
            instance: w.clone(),
            label,
        })
    }

    pub fn is_subset(&self, other: &ExampleSet) -> bool {
        self.iter().all(|(w, l)| other.label(w) == Some(l))
    }
}

/// Parses `+ <bits>` / `- <bits>` lines (`eps` for the empty word); blank
/// lines and `#` comments are skipped.
pub fn parse_example_set(text: &str) -> Result<ExampleSet> {
    let mut set = ExampleSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (sign, word) = split_sign(i + 1, line)?;
        let instance: BinaryString = word
            .parse()
            .map_err(|e: Error| Error::parse(i + 1, e.to_string()))?;
        set.insert(LabeledExample {
            instance,
            label: sign,
        })
        .map_err(|e| Error::parse(i + 1, e.to_string()))?;
    }
    Ok(set)
}

pub(crate) fn split_sign(line: usize, text: &str) -> Result<(bool, &str)> {
    let mut words = text.split_whitespace();
    let sign = match words.next() {
        Some("+") => true,
        Some("-") => false,
        _ => {
            return Err(Error::parse(
                line,
                "expected `+ <instance>` or `- <instance>`",
            ))
        }
    };
    match (words.next(), words.next()) {
        (Some(w), None) => Ok((sign, w)),
        _ => Err(Error::parse(
            line,
            "expected exactly one instance after the sign",
        )),
    }
}

pub fn write_example_set(set: &ExampleSet) -> String {
    let mut out = String::new();
    for (w, l) in set.iter() {
        let _ = writeln!(out, "{} {}", if l { '+' } else { '-' }, w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let set = parse_example_set("# comment\n+ eps\n- 01\n\n+ 1\n").unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(write_example_set(&set), "+ eps\n+ 1\n- 01\n");
    }

    #[test]
    fn contradictions_are_rejected() {
        let err = parse_example_set("+ 01\n- 01\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let mut s = ExampleSet::new();
        s.insert(LabeledExample::positive("1")).unwrap();
        s.insert(LabeledExample::positive("1")).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_example_set("* 01\n").is_err());
        assert!(parse_example_set("+ 012\n").is_err());
        assert!(parse_example_set("+ 0 1\n").is_err());
    }
}
