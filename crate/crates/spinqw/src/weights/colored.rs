use super::qbinom;
use crate::algebra::{qpoch, Field};
use crate::error::{Error, Result};

/// Composition (I_1, …, I_n); thin colored edges carry a color 1..=n or 0.
pub type Composition = Vec<usize>;

fn tail_sum(v: &[usize], from: usize) -> usize {
    v.iter().skip(from).sum()
}

fn plus_unit(v: &[usize], c: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    if c > 0 {
        w[c - 1] += 1;
    }
    w
}

/// All compositions with `n` parts and total size at most `max`.
pub fn compositions(n: usize, max: usize) -> Vec<Composition> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let used: usize = v.iter().sum();
                (0..=max - used).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Colored weight w^col_{x;s}(I, e^a; K, e^b) with bottom I, left color a,
/// top K, right color b. Configurations outside the table have weight 0.
pub fn w_col<K: Field>(q: &K, x: &K, s: &K, big_i: &[usize], a: usize, big_k: &[usize], b: usize) -> Result<K> {
    let n = big_i.len();
    if big_k.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: big_k.len() });
    }
    if a > n || b > n {
        return Err(Error::Precondition(format!("colors {a},{b} exceed n = {n}")));
    }
    if plus_unit(big_i, a) != plus_unit(big_k, b) {
        return Ok(K::zero());
    }
    let sx = s.clone() * x.clone();
    let den = K::one() - sx.clone();
    let s2 = s.powu(2);
    let qp = |e: usize| q.powu(e as u32);
    let total: usize = big_i.iter().sum();
    let num = match (a, b) {
        (0, 0) => K::one() - sx * qp(total),
        (a, b) if a == b => (s2 * qp(big_i[a - 1]) - sx) * qp(tail_sum(big_i, a)),
        (0, c) => sx * (qp(big_i[c - 1]) - K::one()) * qp(tail_sum(big_i, c)),
        (_, 0) => K::one() - s2 * qp(total),
        (i, j) if i < j => sx * (qp(big_i[j - 1]) - K::one()) * qp(tail_sum(big_i, j)),
        (_, i) => s2 * (qp(big_i[i - 1]) - K::one()) * qp(tail_sum(big_i, i)),
    };
    num.div(&den)
}

/// Colored q-Hahn weight W^col_{t,s}(I, J; K, L), given t² and s².
pub fn w_big_col<K: Field>(
    q: &K,
    t2: &K,
    s2: &K,
    big_i: &[usize],
    big_j: &[usize],
    big_k: &[usize],
    big_l: &[usize],
) -> Result<K> {
    let n = big_i.len();
    for v in [big_j, big_k, big_l] {
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
    }
    if (0..n).any(|c| big_i[c] + big_j[c] != big_k[c] + big_l[c] || big_i[c] < big_l[c]) {
        return Ok(K::zero());
    }
    let ti: usize = big_i.iter().sum();
    let tl: usize = big_l.iter().sum();
    let r = s2.div(t2)?;
    let mut acc = (r.powu(tl as u32) * qpoch(&r, q, ti - tl) * qpoch(t2, q, tl)).div(&qpoch(s2, q, ti))?;
    let mut below = 0;
    for c in 0..n {
        acc = acc * q.powu((below * (big_i[c] - big_l[c])) as u32) * qbinom(q, big_i[c], big_l[c])?;
        below += big_l[c];
    }
    Ok(acc)
}
