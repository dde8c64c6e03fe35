use rug::Integer;

use super::Q;
use crate::error::{Error, Result};

/// Parses `p/q` or `p` with an optional leading sign and no whitespace.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("malformed rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n: Integer = num.parse().map_err(|_| bad())?;
    let d: Integer = match den {
        None => Integer::from(1),
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::from((n, d)))
}

pub fn format_q(x: &Q) -> String {
    x.to_string()
}
