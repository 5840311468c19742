use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_BINS: usize = 512;
pub const DEFAULT_FIXED_BINS: usize = 32;

/// Rule for choosing the number of bins of one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinRule {
    Sturges,
    Doane,
    Scott,
    FreedmanDiaconis,
    Fixed(usize),
}

impl Default for BinRule {
    fn default() -> Self {
        BinRule::Fixed(DEFAULT_FIXED_BINS)
    }
}

impl fmt::Display for BinRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinRule::Sturges => f.write_str("sturges"),
            BinRule::Doane => f.write_str("doane"),
            BinRule::Scott => f.write_str("scott"),
            BinRule::FreedmanDiaconis => f.write_str("fd"),
            BinRule::Fixed(k) => write!(f, "fixed:{k}"),
        }
    }
}

impl FromStr for BinRule {
    type Err = Error;

    /// Accepts `sturges`, `doane`, `scott`, `fd`, `fixed:K`, `fixed(K)` or a bare `K`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let fixed = |k: &str| -> Result<BinRule> {
            match k.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(BinRule::Fixed(k.min(MAX_BINS))),
                _ => Err(Error::BadRule(s.to_string())),
            }
        };
        match lower.as_str() {
            "sturges" => Ok(BinRule::Sturges),
            "doane" => Ok(BinRule::Doane),
            "scott" => Ok(BinRule::Scott),
            "fd" | "freedman-diaconis" => Ok(BinRule::FreedmanDiaconis),
            other => {
                if let Some(k) = other.strip_prefix("fixed:") {
                    fixed(k)
                } else if let Some(k) = other.strip_prefix("fixed(").and_then(|r| r.strip_suffix(')')) {
                    fixed(k)
                } else {
                    fixed(other)
                }
            }
        }
    }
}

impl Serialize for BinRule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Quantile by linear interpolation between order statistics (type 7).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

// Round-off slack so that exact quotients such as 7 / 3.5 do not round up.
fn ceil_count(x: f64) -> usize {
    (x - 1e-9).ceil().max(1.0) as usize
}

/// Number of bins `rule` picks for `values`, within `[1, MAX_BINS]`.
/// Constant data always gets one bin.
pub fn bin_count(rule: BinRule, values: &[f64]) -> Result<usize> {
    if values.is_empty() {
        return Err(Error::NoValues);
    }
    let n = values.len();
    let nf = n as f64;
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = max - min;
    if range <= 0.0 {
        return Ok(1);
    }
    let mean = values.iter().sum::<f64>() / nf;
    let central = |p: i32| values.iter().map(|v| (v - mean).powi(p)).sum::<f64>() / nf;

    let k = match rule {
        BinRule::Fixed(k) => k,
        BinRule::Sturges => ceil_count(nf.log2()) + usize::from(n > 1),
        BinRule::Doane => {
            let m2 = central(2);
            if m2 <= 0.0 {
                1
            } else {
                let g1 = central(3) / m2.powf(1.5);
                let skew_term = if n > 2 {
                    let sigma_g1 = (6.0 * (nf - 2.0) / ((nf + 1.0) * (nf + 3.0))).sqrt();
                    (1.0 + g1.abs() / sigma_g1).log2()
                } else {
                    0.0
                };
                ceil_count(1.0 + nf.log2() + skew_term)
            }
        }
        BinRule::Scott => {
            let sd = if n > 1 { (central(2) * nf / (nf - 1.0)).sqrt() } else { 0.0 };
            if sd <= 0.0 {
                1
            } else {
                ceil_count(range / (3.49 * sd / nf.cbrt()))
            }
        }
        BinRule::FreedmanDiaconis => {
            let mut sorted = values.to_vec();
            sorted.sort_by(f64::total_cmp);
            let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
            if iqr <= 0.0 {
                1
            } else {
                ceil_count(range / (2.0 * iqr / nf.cbrt()))
            }
        }
    };
    Ok(k.clamp(1, MAX_BINS))
}
