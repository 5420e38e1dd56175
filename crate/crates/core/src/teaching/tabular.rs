//! Explicitly listed concept classes with a residual "rest" mass.
//!
//! Text format:
//!
//! ```text
//! instances x1 x2 x3
//! concept c1 001 0.30
//! concept c2 010 1/4
//! rest 0.45 1/2 1/3
//! ```
//!
//! Masses are decimals or fractions and are kept as exact rationals. The
//! numbers after the rest mass give, per successive example, the fraction of
//! the remaining rest mass that stays consistent.

use std::collections::HashSet;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

use super::examples::split_sign;
use crate::rational::parse_rational;

#[derive(Clone, Debug, PartialEq)]
pub struct TabularConcept {
    pub name: String,
    pub row: Vec<bool>,
    pub mass: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TabularClass {
    pub instances: Vec<String>,
    pub concepts: Vec<TabularConcept>,
    pub rest_mass: BigRational,
    pub rest_schedule: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabularExample {
    pub instance: String,
    pub label: bool,
}

/// Masses after conditioning on an example sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Posterior {
    /// Surviving prior mass per listed concept; zero when inconsistent.
    pub masses: Vec<BigRational>,
    pub rest_mass: BigRational,
    /// `m_w(S)`: total surviving prior mass.
    pub normalizer: BigRational,
    /// `w(c|S) = w(c) / m_w(S)` for consistent concepts, else zero.
    pub posteriors: Vec<BigRational>,
}

impl TabularClass {
    pub fn new(
        instances: Vec<String>,
        concepts: Vec<TabularConcept>,
        rest_mass: BigRational,
        rest_schedule: Vec<BigRational>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidArgument(msg));
        let mut seen = HashSet::new();
        if let Some(dup) = instances.iter().find(|n| !seen.insert(n.as_str())) {
            return invalid(format!("duplicate instance `{dup}`"));
        }
        let mut seen = HashSet::new();
        for c in &concepts {
            if !seen.insert(c.name.as_str()) {
                return invalid(format!("duplicate concept `{}`", c.name));
            }
            if c.row.len() != instances.len() {
                return invalid(format!(
                    "concept `{}` has {} entries for {} instances",
                    c.name,
                    c.row.len(),
                    instances.len()
                ));
            }
            if c.mass < BigRational::zero() {
                return invalid(format!("concept `{}` has negative mass", c.name));
            }
        }
        if rest_mass < BigRational::zero() {
            return invalid("negative rest mass".into());
        }
        if rest_schedule
            .iter()
            .any(|f| *f < BigRational::zero() || *f > BigRational::one())
        {
            return invalid("rest fractions must lie in [0, 1]".into());
        }
        let total: BigRational = concepts.iter().map(|c| &c.mass).sum::<BigRational>() + &rest_mass;
        let gap = (total - BigRational::one()).abs();
        if gap > BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000)) {
            return invalid("concept masses and rest mass must sum to 1".into());
        }
        Ok(TabularClass {
            instances,
            concepts,
            rest_mass,
            rest_schedule,
        })
    }

    pub fn instance_index(&self, name: &str) -> Result<usize> {
        self.instances
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownInstance(name.to_string()))
    }

    pub fn concept_index(&self, name: &str) -> Result<usize> {
        self.concepts
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownConcept(name.to_string()))
    }
}

/// Conditions the class on an ordered example sequence. The rest mass decays
/// by one schedule entry per example.
pub fn posterior(class: &TabularClass, examples: &[TabularExample]) -> Result<Posterior> {
    if examples.len() > class.rest_schedule.len() {
        return Err(Error::InvalidArgument(format!(
            "{} examples but only {} rest fractions",
            examples.len(),
            class.rest_schedule.len()
        )));
    }
    let resolved: Vec<(usize, bool)> = examples
        .iter()
        .map(|e| Ok((class.instance_index(&e.instance)?, e.label)))
        .collect::<Result<_>>()?;

    let masses: Vec<BigRational> = class
        .concepts
        .iter()
        .map(|c| {
            if resolved.iter().all(|&(i, l)| c.row[i] == l) {
                c.mass.clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let rest_mass = class.rest_schedule[..examples.len()]
        .iter()
        .fold(class.rest_mass.clone(), |m, f| m * f);
    let normalizer: BigRational = masses.iter().sum::<BigRational>() + &rest_mass;
    let posteriors = masses
        .iter()
        .map(|m| {
            if normalizer.is_zero() {
                BigRational::zero()
            } else {
                m / &normalizer
            }
        })
        .collect();
    Ok(Posterior {
        masses,
        rest_mass,
        normalizer,
        posteriors,
    })
}

/// Smallest number of labelled instances after which `target` is the unique
/// maximum-mass consistent listed concept. Rest concepts are not candidates.
pub fn btd_tabular(class: &TabularClass, target: &str) -> Result<usize> {
    let t = class.concept_index(target)?;
    let mass = &class.concepts[t].mass;
    let rivals: Vec<usize> = (0..class.concepts.len())
        .filter(|&j| j != t && class.concepts[j].mass >= *mass)
        .collect();
    smallest_separating_set(class, t, &rivals).ok_or_else(|| {
        Error::NoWitness(format!(
            "`{target}` cannot become the unique most likely concept"
        ))
    })
}

/// Classical teaching dimension within the listed concepts: `target` must be
/// the only consistent one.
pub fn td_tabular(class: &TabularClass, target: &str) -> Result<usize> {
    let t = class.concept_index(target)?;
    let rivals: Vec<usize> = (0..class.concepts.len()).filter(|&j| j != t).collect();
    smallest_separating_set(class, t, &rivals)
        .ok_or_else(|| Error::NoWitness(format!("`{target}` has an indistinguishable listed twin")))
}

fn smallest_separating_set(class: &TabularClass, target: usize, rivals: &[usize]) -> Option<usize> {
    let row = &class.concepts[target].row;
    // For each rival, the instances on which it disagrees with the target.
    let disagreements: Vec<Vec<usize>> = rivals
        .iter()
        .map(|&j| {
            let other = &class.concepts[j].row;
            (0..row.len()).filter(|&i| other[i] != row[i]).collect()
        })
        .collect();
    if disagreements.iter().any(Vec::is_empty) {
        return None;
    }
    let n = class.instances.len();
    (0..=n).find(|&size| {
        combinations(n, size).any(|subset| {
            disagreements
                .iter()
                .all(|d| d.iter().any(|i| subset.contains(i)))
        })
    })
}

pub(crate) fn combinations(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let c = current.as_mut().unwrap();
        let mut i = size;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if c[i] < n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

pub fn parse_tabular_class(text: &str) -> Result<TabularClass> {
    let mut instances: Option<Vec<String>> = None;
    let mut concepts = Vec::new();
    let mut rest: Option<(BigRational, Vec<BigRational>)> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        last_line = n;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "instances" if instances.is_none() => {
                instances = Some(words[1..].iter().map(|w| w.to_string()).collect());
            }
            "concept" => {
                let [_, name, row, mass] = words.as_slice() else {
                    return Err(Error::parse(n, "expected `concept <name> <bitrow> <mass>`"));
                };
                let row = row
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::parse(n, format!("bad row entry `{ch}`"))),
                    })
                    .collect::<Result<Vec<bool>>>()?;
                concepts.push(TabularConcept {
                    name: name.to_string(),
                    row,
                    mass: parse_rational(mass).map_err(|m| Error::parse(n, m))?,
                });
            }
            "rest" if rest.is_none() => {
                let Some(mass) = words.get(1) else {
                    return Err(Error::parse(n, "expected `rest <mass> <fractions…>`"));
                };
                let mass = parse_rational(mass).map_err(|m| Error::parse(n, m))?;
                let schedule = words[2..]
                    .iter()
                    .map(|w| parse_rational(w).map_err(|m| Error::parse(n, m)))
                    .collect::<Result<_>>()?;
                rest = Some((mass, schedule));
            }
            other => return Err(Error::parse(n, format!("unexpected `{other}` line"))),
        }
    }
    let instances = instances.ok_or_else(|| Error::parse(last_line, "missing `instances` line"))?;
    let (rest_mass, schedule) = rest.unwrap_or_else(|| (BigRational::zero(), Vec::new()));
    TabularClass::new(instances, concepts, rest_mass, schedule)
        .map_err(|e| Error::parse(last_line, e.to_string()))
}

/// `+ <instance>` / `- <instance>` lines, order preserved.
pub fn parse_tabular_examples(text: &str) -> Result<Vec<TabularExample>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, instance) = split_sign(i + 1, line)?;
        out.push(TabularExample {
            instance: instance.to_string(),
            label,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lex_order() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn single_concept_needs_nothing() {
        let class = parse_tabular_class("instances a b\nconcept only 01 1\n").unwrap();
        assert_eq!(td_tabular(&class, "only").unwrap(), 0);
        assert_eq!(btd_tabular(&class, "only").unwrap(), 0);
    }

    #[test]
    fn twins_have_no_witness() {
        let class = parse_tabular_class("instances a\nconcept p 1 1/2\nconcept q 1 1/2\n").unwrap();
        assert!(matches!(td_tabular(&class, "p"), Err(Error::NoWitness(_))));
        assert!(matches!(btd_tabular(&class, "q"), Err(Error::NoWitness(_))));
    }

    #[test]
    fn class_validation() {
        assert!(parse_tabular_class("instances a\nconcept p 1 0.5\n").is_err());
        assert!(parse_tabular_class("instances a b\nconcept p 1 1\n").is_err());
        assert!(parse_tabular_class("instances a\nconcept p 1 1\nrest 0 3/2\n").is_err());
        assert!(parse_tabular_class("concept p 1 1\n").is_err());
    }

    #[test]
    fn unknown_names() {
        let class = parse_tabular_class("instances a\nconcept p 1 1\nrest 0 1\n").unwrap();
        let ex = parse_tabular_examples("+ z\n").unwrap();
        assert!(matches!(
            posterior(&class, &ex),
            Err(Error::UnknownInstance(_))
        ));
        assert!(matches!(
            btd_tabular(&class, "q"),
            Err(Error::UnknownConcept(_))
        ));
    }
}
