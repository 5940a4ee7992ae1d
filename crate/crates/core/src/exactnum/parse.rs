//! Grammar shared by the CLI and configuration:
//!
//! ```text
//! threshold := ['-'] (ratio | 'sqrt(' uint [ '/' uint ] ')')
//! ratio     := ['-'] (uint | uint '/' uint | uint '.' digits)
//! ```
//!
//! Decimals are converted exactly (`1.85` is `37/20`).

use num_bigint::BigInt;

use super::{Ratio, Sign, Threshold};
use crate::error::{Error, Result};

fn parse_uint(s: &str, whole: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("malformed number `{whole}`")));
    }
    Ok(s.parse().expect("validated digits"))
}

fn parse_unsigned_ratio(s: &str, whole: &str) -> Result<Ratio> {
    if let Some((p, q)) = s.split_once('/') {
        let q = parse_uint(q, whole)?;
        if q == BigInt::from(0) {
            return Err(Error::parse(format!("zero denominator in `{whole}`")));
        }
        return Ratio::new(parse_uint(p, whole)?, q);
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = parse_uint(int, whole)?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = parse_uint(frac, whole)?;
        return Ratio::new(int * &scale + frac, scale);
    }
    Ok(Ratio::from_integer(parse_uint(s, whole)?))
}

/// Parses `INT`, `INT/INT` or `DECIMAL`, optionally negated.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let s = s.trim();
    match s.strip_prefix('-') {
        Some(rest) => Ok(-parse_unsigned_ratio(rest, s)?),
        None => parse_unsigned_ratio(s, s),
    }
}

/// Parses a threshold: a ratio or `sqrt(INT)` / `sqrt(INT/INT)`, optionally
/// negated.
pub fn parse_threshold(s: &str) -> Result<Threshold> {
    let s = s.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if let Some(inner) = body.strip_prefix("sqrt(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(format!("unclosed sqrt in `{s}`")))?;
        if inner.contains('.') {
            return Err(Error::parse(format!("sqrt takes INT or INT/INT, got `{s}`")));
        }
        let sq = parse_unsigned_ratio(inner, s)?;
        let sign = if negative { Sign::Negative } else { Sign::Positive };
        return Threshold::signed_sqrt(sign, sq);
    }
    let r = parse_unsigned_ratio(body, s)?;
    let r = if negative { -r } else { r };
    Ok(Threshold::from_ratio(&r))
}
