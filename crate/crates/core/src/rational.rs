use num::{BigInt, BigRational, Zero};

/// Exact rational from `a/b`, an integer, or a plain decimal like `0.05`.
pub(crate) fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("`{s}` is not a rational number");
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    if whole.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("0.30").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("8/13").unwrap(), ratio(8, 13));
        assert_eq!(parse_rational("1").unwrap(), ratio(1, 1));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }
}
