//! Partitions and the interlacing predicates used by boundary conditions.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts; trailing zeros are implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Panics on invalid input; for literals in tests and examples.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("invalid partition literal")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// λ_i with 1-based index; zero past the length.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "partition parts are indexed from 1");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.first())
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// m_j(λ′) = λ_j − λ_{j+1}.
    pub fn col_mult(&self, j: usize) -> usize {
        self.part(j) - self.part(j + 1)
    }

    /// μ ⊆ λ as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// Prepends the part `n`.
    pub fn hat_extend(&self, n: usize) -> Result<Partition> {
        if n < self.first() {
            return Err(Error::Precondition(format!("cannot prepend {n} to {self}")));
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(n);
        parts.extend_from_slice(&self.parts);
        Partition::new(parts)
    }
}

/// λ ≻ μ: λ_i ≥ μ_i ≥ λ_{i+1} for all i.
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    if mu.len() > lambda.len() || lambda.len() > mu.len() + 1 {
        return false;
    }
    (1..=lambda.len()).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}

/// ν ⊇ ρ with ν_i − ρ_i ∈ {0,1} for all i.
pub fn is_vertical_strip(nu: &Partition, rho: &Partition) -> bool {
    nu.contains(rho) && (1..=nu.len()).all(|i| nu.part(i) - rho.part(i) <= 1)
}

/// All partitions with at most `rows` parts, each at most `cols`, ordered by
/// size and then lexicographically.
pub fn enum_box(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition { parts: cur.clone() });
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    rec(rows, cols, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.parts.cmp(&b.parts)));
    out
}

/// All partitions with |λ| ≤ n.
pub fn enum_up_to_size(n: usize) -> Vec<Partition> {
    enum_box(n, n).into_iter().filter(|p| p.size() <= n).collect()
}

/// All λ ≻ μ with λ_1 ≤ cap.
pub fn enum_interlacing_above(mu: &Partition, cap: usize) -> Vec<Partition> {
    let mut ranges = Vec::with_capacity(mu.len() + 1);
    if cap < mu.first() {
        return Vec::new();
    }
    ranges.push((mu.first(), cap));
    for i in 2..=mu.len() + 1 {
        ranges.push((mu.part(i), mu.part(i - 1)));
    }
    product_partitions(&ranges)
}

/// All μ ≺ λ.
pub fn enum_interlacing_below(lambda: &Partition) -> Vec<Partition> {
    let ranges: Vec<_> = (1..=lambda.len()).map(|i| (lambda.part(i + 1), lambda.part(i))).collect();
    product_partitions(&ranges)
}

/// All ν with ν ⊇ ρ a vertical strip and l(ν) ≤ rows.
pub fn enum_vertical_strips_above(rho: &Partition, rows: usize) -> Vec<Partition> {
    let n = rows.max(rho.len());
    let ranges: Vec<_> = (1..=n).map(|i| (rho.part(i), rho.part(i) + 1)).collect();
    product_partitions(&ranges)
}

/// All ρ ⊆ ν with ν/ρ a vertical strip.
pub fn enum_vertical_strips_below(nu: &Partition) -> Vec<Partition> {
    let ranges: Vec<_> = (1..=nu.len()).map(|i| (nu.part(i).saturating_sub(1), nu.part(i))).collect();
    product_partitions(&ranges)
}

fn product_partitions(ranges: &[(usize, usize)]) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = vec![0; ranges.len()];
    fn rec(i: usize, ranges: &[(usize, usize)], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == ranges.len() {
            if let Ok(p) = Partition::new(cur.clone()) {
                out.push(p);
            }
            return;
        }
        let (lo, hi) = ranges[i];
        let hi = if i > 0 { hi.min(cur[i - 1]) } else { hi };
        for v in lo..=hi {
            cur[i] = v;
            rec(i + 1, ranges, cur, out);
        }
    }
    rec(0, ranges, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; the empty string is ∅.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad part {t:?} in {s:?}")));
                }
                t.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::from_parts(v)
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        for l in enum_up_to_size(12) {
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }

    #[test]
    fn col_mult_examples() {
        assert_eq!(p(&[3, 1]).col_mult(1), 2);
        for j in 1..5 {
            assert_eq!(Partition::empty().col_mult(j), 0);
        }
        for l in enum_up_to_size(12) {
            let total: usize = (1..=l.len()).map(|j| j * l.col_mult(j)).sum();
            assert_eq!(total, l.size());
        }
    }

    #[test]
    fn multiplicities_match_conjugate_columns() {
        for l in enum_up_to_size(9) {
            let c = l.conjugate();
            for k in 1..=l.first() + 1 {
                let mk = l.parts().iter().filter(|&&x| x == k).count();
                assert_eq!(mk, c.col_mult(k));
            }
        }
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[2, 1]), &p(&[1])));
        assert!(!interlaces(&p(&[1]), &p(&[2])));
        let all = enum_up_to_size(10);
        for l in &all {
            for m in &all {
                if interlaces(l, m) {
                    assert!(l.len() >= m.len() && l.len() <= m.len() + 1);
                }
                let lc = l.conjugate();
                let mc = m.conjugate();
                let col_rule = l.contains(m) && (1..=lc.len()).all(|r| lc.part(r) <= mc.part(r) + 1);
                assert_eq!(interlaces(l, m), col_rule, "{l} {m}");
            }
        }
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(enum_box(0, 0), vec![Partition::empty()]);
        assert_eq!(enum_box(1, 2), vec![Partition::empty(), p(&[1]), p(&[2])]);
        assert_eq!(enum_box(3, 3).len(), 20);
    }

    #[test]
    fn interlacing_enumeration() {
        assert_eq!(enum_interlacing_above(&Partition::empty(), 0), vec![Partition::empty()]);
        assert_eq!(enum_interlacing_above(&p(&[1]), 1), vec![p(&[1]), p(&[1, 1])]);
        let boxed = enum_box(5, 5);
        for mu in enum_box(4, 4) {
            let above = enum_interlacing_above(&mu, 5);
            let expect: Vec<_> = boxed.iter().filter(|l| interlaces(l, &mu)).cloned().collect();
            let mut got = above.clone();
            got.sort();
            let mut exp = expect;
            exp.sort();
            assert_eq!(got, exp);
            for l in &above {
                assert!(enum_interlacing_below(l).contains(&mu));
            }
        }
    }

    #[test]
    fn vertical_strip_enumeration() {
        let boxed = enum_box(5, 5);
        for rho in enum_box(3, 4) {
            let mut up = enum_vertical_strips_above(&rho, 5);
            up.sort();
            let mut exp: Vec<_> = boxed.iter().filter(|n| is_vertical_strip(n, &rho)).cloned().collect();
            exp.sort();
            assert_eq!(up, exp);
        }
        for nu in enum_box(3, 3) {
            for rho in enum_vertical_strips_below(&nu) {
                assert!(is_vertical_strip(&nu, &rho));
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("1,,2".parse::<Partition>().is_err());
        assert_eq!(p(&[2, 1]).hat_extend(4).unwrap(), p(&[4, 2, 1]));
        assert_eq!(Partition::empty().hat_extend(3).unwrap(), p(&[3]));
        assert!(p(&[2]).hat_extend(1).is_err());
    }
}
