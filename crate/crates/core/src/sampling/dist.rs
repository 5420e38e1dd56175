use num::{BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::parse_rational as tabular_rational;

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum DistKind {
    /// `V_k = ((3r+1)/r) · (4 + 1/r)^(-k)`.
    Geometric { r: f64 },
    /// `V_k = p · (1-p)^(k-1)`.
    GeometricFromOne { p: f64 },
    /// Explicit batch masses, optionally followed by a geometric tail.
    Custom,
}

/// `V_k = first · ratio^(k - start)` for `k >= start`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricTail {
    pub start: usize,
    pub first: f64,
    pub ratio: f64,
}

impl GeometricTail {
    pub fn mass(&self) -> f64 {
        self.first / (1.0 - self.ratio)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchDistribution {
    kind: DistKind,
    /// Exact masses for batches `1..=head.len()`, when given as rationals.
    head: Vec<BigRational>,
    tail: Option<GeometricTail>,
    /// Exact tail parameters `(first, ratio)` for rational custom tails.
    tail_exact: Option<(BigRational, BigRational)>,
}

impl BatchDistribution {
    pub fn geometric(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "r must be positive, got {r}"
            )));
        }
        Ok(BatchDistribution {
            kind: DistKind::Geometric { r },
            head: Vec::new(),
            tail: Some(GeometricTail {
                start: 1,
                first: (3.0 * r + 1.0) / (4.0 * r + 1.0),
                ratio: r / (4.0 * r + 1.0),
            }),
            tail_exact: None,
        })
    }

    pub fn geometric_from_one(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidDistribution(format!(
                "p must lie in (0, 1], got {p}"
            )));
        }
        Ok(BatchDistribution {
            kind: DistKind::GeometricFromOne { p },
            head: Vec::new(),
            tail: Some(GeometricTail {
                start: 1,
                first: p,
                ratio: 1.0 - p,
            }),
            tail_exact: None,
        })
    }

    /// Explicit masses for listed batches (unlisted batches get zero) and an
    /// optional geometric tail `(ratio, k_s)` carrying the remaining mass
    /// from batch `k_s` on.
    ///
    /// The tail ratio must be below `1/4` so that the tail converges against
    /// the default `2^(2k-1)` profile.
    pub fn custom(
        table: &[(usize, BigRational)],
        tail: Option<(BigRational, usize)>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidDistribution(msg));
        let mut head: Vec<BigRational> = Vec::new();
        for (k, v) in table {
            if *k == 0 {
                return invalid("batch indices start at 1".into());
            }
            if *v < BigRational::zero() {
                return invalid(format!("negative mass for batch {k}"));
            }
            if head.len() < *k {
                head.resize(*k, BigRational::zero());
            }
            if !head[k - 1].is_zero() {
                return invalid(format!("batch {k} listed twice"));
            }
            head[k - 1] = v.clone();
        }
        let listed: BigRational = head.iter().sum();
        let remainder = BigRational::one() - &listed;

        let (tail, tail_exact) = match tail {
            Some((ratio, start)) => {
                if start <= head.len() {
                    return invalid(format!(
                        "tail starts at {start} but batch {} is listed",
                        head.len()
                    ));
                }
                if ratio < BigRational::zero()
                    || &ratio * BigRational::from_integer(4.into()) >= BigRational::one()
                {
                    return invalid("tail ratio must lie in [0, 1/4)".into());
                }
                if remainder < BigRational::zero() {
                    return invalid("listed masses exceed 1".into());
                }
                let first = &remainder * (BigRational::one() - &ratio);
                (
                    Some(GeometricTail {
                        start,
                        first: to_f64(&first),
                        ratio: to_f64(&ratio),
                    }),
                    Some((first, ratio)),
                )
            }
            None => {
                if to_f64(&remainder).abs() > NORMALIZATION_TOLERANCE {
                    return invalid(format!("masses sum to {}, not 1", to_f64(&listed)));
                }
                (None, None)
            }
        };
        Ok(BatchDistribution {
            kind: DistKind::Custom,
            head,
            tail,
            tail_exact,
        })
    }

    /// The hand-tuned distribution favouring batches 2 and 3:
    /// `V_1 = 1/13, V_2 = 8/13, V_3 = 3/13`, then `V_k = 14^-(k-3)`.
    pub fn mid_heavy() -> Self {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        BatchDistribution::custom(
            &[(1, r(1, 13)), (2, r(8, 13)), (3, r(3, 13))],
            Some((r(1, 14), 4)),
        )
        .expect("valid fixture")
    }

    pub fn kind(&self) -> &DistKind {
        &self.kind
    }

    pub fn tail(&self) -> Option<&GeometricTail> {
        self.tail.as_ref()
    }

    /// Number of explicitly listed leading batches.
    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    /// First batch from which every mass is given by the tail (or is zero).
    pub(crate) fn tail_start(&self) -> usize {
        self.tail
            .as_ref()
            .map_or(self.head.len() + 1, |t| t.start.max(self.head.len() + 1))
    }

    pub fn mass(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        if k <= self.head.len() {
            return to_f64(&self.head[k - 1]);
        }
        match &self.tail {
            Some(t) if k >= t.start => t.first * t.ratio.powi((k - t.start) as i32),
            _ => 0.0,
        }
    }

    /// `V_k` as an exact rational when the distribution was given that way.
    pub fn mass_exact(&self, k: usize) -> Option<BigRational> {
        if k == 0 {
            return Some(BigRational::zero());
        }
        if k <= self.head.len() {
            return Some(self.head[k - 1].clone());
        }
        if !matches!(self.kind, DistKind::Custom) {
            return None;
        }
        match (&self.tail, &self.tail_exact) {
            (Some(t), Some((first, ratio))) if k >= t.start => {
                Some(first * num::pow(ratio.clone(), k - t.start))
            }
            _ => Some(BigRational::zero()),
        }
    }

    /// `Σ_k V_k` with the tail summed in closed form.
    pub fn total_mass(&self) -> f64 {
        let head: f64 = self.head.iter().map(to_f64).sum();
        head + self.tail.as_ref().map_or(0.0, GeometricTail::mass)
    }

    /// Inverse-CDF draw of a batch index from `u ∈ [0, 1)`.
    pub fn sample_k(&self, u: f64) -> usize {
        let mut cumulative = 0.0;
        for k in 1..=self.head.len() {
            let v = self.mass(k);
            cumulative += v;
            if u < cumulative && v > 0.0 {
                return k;
            }
        }
        let Some(t) = &self.tail else {
            // Rounding left `u` past the listed mass: take the last nonzero batch.
            return (1..=self.head.len())
                .rev()
                .find(|&k| self.mass(k) > 0.0)
                .unwrap_or(1);
        };
        if t.ratio == 0.0 {
            return t.start;
        }
        let frac = ((u - cumulative) / t.mass()).clamp(0.0, 1.0 - f64::EPSILON);
        let j = ((1.0 - frac).ln() / t.ratio.ln()).floor();
        t.start + j.max(0.0) as usize
    }

    /// Largest batch carrying the listed head mass; `None` if the tail is
    /// unbounded.
    pub fn support_end(&self) -> Option<usize> {
        match &self.tail {
            Some(t) if t.first > 0.0 => None,
            _ => Some(self.head.len()),
        }
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses a distribution file.
///
/// ```text
/// dist geometric r=1
/// ```
/// or `dist geometric p=1/6` for `V_k = p (1-p)^(k-1)`, or
/// ```text
/// dist custom
/// batch 1 1/13
/// batch 2 8/13
/// batch 3 3/13
/// tail geometric 1/14 from 4
/// ```
pub fn parse_distribution(text: &str) -> Result<BatchDistribution> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (n, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty distribution file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let rational = |n: usize, s: &str| tabular_rational(s).map_err(|m| Error::parse(n, m));
    let as_f64 =
        |n: usize, s: &str| -> Result<f64> { Ok(rational(n, s)?.to_f64().unwrap_or(f64::NAN)) };
    match words.as_slice() {
        ["dist", "geometric", param] => {
            if let Some((n2, extra)) = lines.next() {
                return Err(Error::parse(n2, format!("unexpected `{extra}`")));
            }
            let wrap = |e: Error| Error::parse(n, e.to_string());
            match param.split_once('=') {
                Some(("r", v)) => BatchDistribution::geometric(as_f64(n, v)?).map_err(wrap),
                Some(("p", v)) => {
                    BatchDistribution::geometric_from_one(as_f64(n, v)?).map_err(wrap)
                }
                _ => Err(Error::parse(n, "expected `r=<real>` or `p=<real>`")),
            }
        }
        ["dist", "custom"] => {
            let mut table = Vec::new();
            let mut tail = None;
            let mut last = n;
            for (n, line) in lines {
                last = n;
                let words: Vec<&str> = line.split_whitespace().collect();
                match words.as_slice() {
                    ["batch", k, v] if tail.is_none() => {
                        let k: usize = k
                            .parse()
                            .map_err(|_| Error::parse(n, format!("bad batch index `{k}`")))?;
                        table.push((k, rational(n, v)?));
                    }
                    ["tail", "geometric", ratio, "from", start] if tail.is_none() => {
                        let start: usize = start
                            .parse()
                            .map_err(|_| Error::parse(n, format!("bad tail start `{start}`")))?;
                        tail = Some((rational(n, ratio)?, start));
                    }
                    _ => return Err(Error::parse(n, format!("unexpected `{line}`"))),
                }
            }
            BatchDistribution::custom(&table, tail).map_err(|e| Error::parse(last, e.to_string()))
        }
        _ => Err(Error::parse(
            n,
            "expected `dist geometric …` or `dist custom`",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_masses_normalize() {
        for rr in [0.5, 1.0, 2.0, 10.0] {
            let d = BatchDistribution::geometric(rr).unwrap();
            assert!((d.total_mass() - 1.0).abs() < 1e-12);
            let direct: f64 = (1..200).map(|k| d.mass(k)).sum();
            assert!((direct - 1.0).abs() < 1e-9);
        }
        let d = BatchDistribution::geometric(1.0).unwrap();
        assert!((d.mass(1) - 0.8).abs() < 1e-15);
        assert!((d.mass(2) - 0.16).abs() < 1e-15);
    }

    #[test]
    fn mid_heavy_tail_is_fourteenth_powers() {
        let d = BatchDistribution::mid_heavy();
        assert_eq!(d.mass_exact(2), Some(r(8, 13)));
        assert_eq!(d.mass_exact(4), Some(r(1, 14)));
        assert_eq!(d.mass_exact(5), Some(r(1, 196)));
        assert!((d.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parse_formats() {
        let d = parse_distribution(
            "dist custom\nbatch 1 1/13\nbatch 2 8/13\nbatch 3 3/13\ntail geometric 1/14 from 4\n",
        )
        .unwrap();
        assert_eq!(d, BatchDistribution::mid_heavy());
        let g = parse_distribution("dist geometric r=2\n").unwrap();
        assert_eq!(g.kind(), &DistKind::Geometric { r: 2.0 });
        let p = parse_distribution("dist geometric p=1/6\n").unwrap();
        assert!((p.mass(1) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_distributions() {
        assert!(parse_distribution("dist custom\nbatch 1 1/2\n").is_err());
        assert!(
            parse_distribution("dist custom\nbatch 1 1/2\ntail geometric 1/3 from 2\n").is_err()
        );
        assert!(
            parse_distribution("dist custom\nbatch 2 1/2\ntail geometric 1/5 from 2\n").is_err()
        );
        assert!(
            parse_distribution("dist custom\nbatch 1 3/2\ntail geometric 1/5 from 2\n").is_err()
        );
        assert!(parse_distribution("dist geometric r=-1\n").is_err());
        assert!(parse_distribution("dist poisson\n").is_err());
    }

    #[test]
    fn all_mass_on_one_batch() {
        let d = BatchDistribution::custom(&[(3, r(1, 1))], None).unwrap();
        assert_eq!(d.mass(1), 0.0);
        assert_eq!(d.mass(3), 1.0);
        assert_eq!(d.sample_k(0.0), 3);
        assert_eq!(d.sample_k(0.999), 3);
    }

    #[test]
    fn sampling_follows_the_masses() {
        let d = BatchDistribution::mid_heavy();
        let n = 100_000;
        let mut counts = [0usize; 8];
        for i in 0..n {
            let k = d.sample_k((i as f64 + 0.5) / n as f64);
            counts[k.min(7)] += 1;
        }
        for k in 1..=6 {
            let expected = d.mass(k) * n as f64;
            assert!((counts[k] as f64 - expected).abs() <= 2.0, "k={k}");
        }
    }
}
