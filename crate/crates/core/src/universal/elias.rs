use crate::error::{Error, Result};

/// Elias gamma codeword: `⌊log2 n⌋` zeros, then `n` in binary (which starts
/// with a one).
///
/// Panics if `n == 0`.
pub fn elias_encode(n: u64) -> Vec<bool> {
    assert!(n != 0, "Elias gamma codes start at 1");
    let width = 64 - n.leading_zeros() as usize;
    let mut bits = vec![false; width - 1];
    bits.extend((0..width).rev().map(|b| (n >> b) & 1 == 1));
    bits
}

/// Decodes one codeword from the front of `bits`, returning the value and
/// the number of bits consumed.
pub fn elias_decode(bits: &[bool]) -> Result<(u64, usize)> {
    let zeros = bits.iter().take_while(|&&b| !b).count();
    if zeros == bits.len() {
        return Err(Error::Decode(
            "no terminating one in the length prefix".into(),
        ));
    }
    if zeros >= 64 {
        return Err(Error::Decode("codeword exceeds 64 bits of payload".into()));
    }
    let end = 2 * zeros + 1;
    if bits.len() < end {
        return Err(Error::Decode(format!(
            "truncated codeword: need {end} bits, have {}",
            bits.len()
        )));
    }
    let value = bits[zeros..end]
        .iter()
        .fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
    Ok((value, end))
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Decode(format!("`{c}` is not a bit"))),
        })
        .collect()
}
