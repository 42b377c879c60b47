//! Line-based text form of a truncated series: one `n coefficient` pair per
//! line, ascending `n`, decimal integers.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::series::QSeriesTrunc;
use crate::error::{Error, Result};

pub fn write_series(s: &QSeriesTrunc) -> String {
    let mut out = String::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{n} {c}");
    }
    out
}

/// Parses the text form. Blank lines and `#` comments are ignored; skipped
/// exponents read as zero and the order is the last exponent listed.
pub fn read_series(text: &str) -> Result<QSeriesTrunc> {
    let mut pairs: Vec<(usize, BigInt)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(n), Some(c), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("line {}: expected `n coefficient`", lineno + 1)));
        };
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("line {}: bad exponent `{n}`", lineno + 1)))?;
        let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("line {}: bad coefficient `{c}`", lineno + 1)))?;
        if let Some((prev, _)) = pairs.last() {
            if n <= *prev {
                return Err(Error::Parse(format!("line {}: exponents must increase", lineno + 1)));
            }
        }
        pairs.push((n, c));
    }
    let Some(&(order, _)) = pairs.last() else {
        return Err(Error::Parse("empty series".into()));
    };
    let mut s = QSeriesTrunc::zero(order);
    for (n, c) in pairs {
        *s.coeff_mut(n) = c;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_gaps() {
        let s = QSeriesTrunc::from_coeffs([1, 0, -5], 2);
        let text = write_series(&s);
        assert_eq!(text, "0 1\n1 0\n2 -5\n");
        assert_eq!(read_series(&text).unwrap(), s);
        assert_eq!(read_series("# comment\n0 1\n2 -5\n").unwrap(), s);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_series("").is_err());
        assert!(read_series("0 1\n0 2\n").is_err());
        assert!(read_series("0 x\n").is_err());
        assert!(read_series("0 1 2\n").is_err());
    }
}
