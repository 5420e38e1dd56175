use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`, ordered shortlex: shorter words first, then
/// lexicographically with `0 < 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinaryString(Vec<bool>);

impl BinaryString {
    pub fn empty() -> Self {
        BinaryString(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryString(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    /// The word at position `index` of the shortlex enumeration
    /// `ε, 0, 1, 00, 01, 10, 11, 000, …`.
    ///
    /// Position `i` is the binary expansion of `i + 1` with its leading one
    /// removed.
    pub fn from_shortlex_index(index: u64) -> Self {
        let n = index + 1;
        let len = 63 - n.leading_zeros() as usize;
        let bits = (0..len).rev().map(|b| (n >> b) & 1 == 1).collect();
        BinaryString(bits)
    }

    /// Inverse of [`BinaryString::from_shortlex_index`]. Returns `None` when
    /// the word is too long to index with a `u64`.
    pub fn shortlex_index(&self) -> Option<u64> {
        if self.0.len() >= 63 {
            return None;
        }
        let n = self
            .0
            .iter()
            .fold(1u64, |acc, &b| (acc << 1) | u64::from(b));
        Some(n - 1)
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = BinaryString> {
        let count = (1u64 << (max_len + 1)) - 1;
        (0..count).map(BinaryString::from_shortlex_index)
    }

    /// Token form used in text files: the bits, or `eps` for the empty word.
    pub fn to_token(&self) -> String {
        self.to_string()
    }
}

impl Ord for BinaryString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BinaryString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "eps" || s == "ε" {
            return Ok(BinaryString::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "`{other}` is not a binary digit in `{s}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryString)
    }
}

impl From<&str> for BinaryString {
    /// Panics on anything but `0`/`1` digits or `eps`; meant for literals.
    fn from(s: &str) -> Self {
        s.parse().expect("binary string literal")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_index_round_trip() {
        let words: Vec<String> = (0..7)
            .map(|i| BinaryString::from_shortlex_index(i).to_string())
            .collect();
        assert_eq!(words, ["eps", "0", "1", "00", "01", "10", "11"]);
        for i in 0..2000 {
            let w = BinaryString::from_shortlex_index(i);
            assert_eq!(w.shortlex_index(), Some(i));
        }
    }

    #[test]
    fn ordering_is_shortlex() {
        let mut v: Vec<BinaryString> = ["10", "0", "eps", "000", "01", "1"]
            .into_iter()
            .map(BinaryString::from)
            .collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["eps", "0", "1", "01", "10", "000"]);
    }

    #[test]
    fn parse_rejects_other_digits() {
        assert!("012".parse::<BinaryString>().is_err());
        assert!("eps".parse::<BinaryString>().unwrap().is_empty());
    }
}
