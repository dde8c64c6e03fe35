use super::{Ring, C64};
use crate::error::{Error, Result};

/// (x;q)_n = ∏_{i=1}^{n} (1 − x q^{i−1}).
pub fn qpoch<K: Ring>(x: &K, q: &K, n: usize) -> K {
    let mut acc = K::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * (K::one() - term.clone());
        term = term * q.clone();
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfProduct {
    pub value: C64,
    /// Number of factors kept.
    pub terms: usize,
}

/// (x;q)_∞ truncated at the first k with |x||q|^k/(1−|q|) < tol.
pub fn qpoch_inf(x: C64, q: C64, tol: f64) -> Result<InfProduct> {
    let aq = q.norm();
    if aq >= 1.0 {
        return Err(Error::Precondition(format!("|q| = {aq} must be below 1")));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let ax = x.norm();
    let mut k = 0usize;
    while ax * aq.powi(k as i32) / (1.0 - aq) >= tol {
        k += 1;
    }
    let value = qpoch(&x, &q, k);
    if !value.is_finite() {
        return Err(Error::Pole("non-finite infinite product".into()));
    }
    Ok(InfProduct { value, terms: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Q};

    fn r(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    #[test]
    fn finite_examples() {
        assert_eq!(qpoch(&r(5, 7), &r(1, 3), 0), r(1, 1));
        assert_eq!(qpoch(&r(0, 1), &r(1, 3), 5), r(1, 1));
        assert_eq!(qpoch(&r(1, 2), &r(1, 3), 2), r(5, 12));
    }

    #[test]
    fn finite_split() {
        let (x, q) = (r(-3, 5), r(2, 7));
        for n in 0..=8 {
            for m in 0..=8 {
                let lhs = qpoch(&x, &q, n + m);
                let rhs = qpoch(&x, &q, n) * qpoch(&(x.clone() * q.powu(n as u32)), &q, m);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn infinite_product() {
        let q = C64::new(1.0 / 3.0, 0.0);
        assert_eq!(qpoch_inf(C64::new(0.0, 0.0), q, 1e-14).unwrap().value, C64::new(1.0, 0.0));
        let long = qpoch(&q, &q, 60);
        let v = qpoch_inf(q, q, 1e-14).unwrap().value;
        assert!((v - long).norm() < 1e-14);
        let x = C64::new(0.4, 0.1);
        let a = qpoch_inf(x, q, 1e-15).unwrap().value;
        let b = qpoch_inf(x * q, q, 1e-15).unwrap().value;
        assert!((a - (C64::new(1.0, 0.0) - x) * b).norm() < 1e-13);
        assert!(qpoch_inf(x, C64::new(1.0, 0.0), 1e-10).is_err());
    }
}
