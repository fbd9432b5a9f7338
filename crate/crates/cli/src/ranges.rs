use std::ops::RangeInclusive;

use anyhow::{bail, Context, Result};
use nfext::TruncationLevel;

/// `"a..b"` or `"a"`, inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: i64 = lo.trim().parse().with_context(|| format!("bad range `{s}`"))?;
    let hi: i64 = hi.trim().parse().with_context(|| format!("bad range `{s}`"))?;
    if lo > hi {
        bail!("empty range `{s}`");
    }
    Ok(lo..=hi)
}

pub fn parse_u32_range(s: &str) -> Result<RangeInclusive<u32>> {
    let r = parse_range(s)?;
    if *r.start() < 0 || *r.end() > u32::MAX as i64 {
        bail!("range `{s}` must be non-negative");
    }
    Ok(*r.start() as u32..=*r.end() as u32)
}

/// Comma-separated levels, each `n`, `a..b` or `inf`.
pub fn parse_levels(s: &str) -> Result<Vec<TruncationLevel>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.contains("..") {
            for n in parse_u32_range(part)? {
                out.push(part_level(&n.to_string())?);
            }
        } else {
            out.push(part_level(part)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn part_level(s: &str) -> Result<TruncationLevel> {
    s.parse::<TruncationLevel>()
        .map_err(|e| anyhow::anyhow!("bad level `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-8..8").unwrap(), -8..=8);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("-8..=-1").unwrap(), -8..=-1);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
        assert!(parse_u32_range("-1..2").is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(
            parse_levels("3,1..2,inf").unwrap(),
            [
                TruncationLevel::finite(1),
                TruncationLevel::finite(2),
                TruncationLevel::finite(3),
                TruncationLevel::Infinite
            ]
        );
        assert!(parse_levels("0").is_err());
    }
}
