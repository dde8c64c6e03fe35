use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::{Algebra, Field, Ring, Q};
use crate::error::{Error, Result};

/// Sparse polynomial over exact rationals.
///
/// Values built from `Ring::zero`/`Ring::one` carry zero variables and are
/// padded with zero exponents when combined with wider polynomials.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable x_i (0-based) among `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Q::from(1));
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a nonzero term; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let wide = self.widen(self.nvars.max(i + 1).max(j + 1));
        let mut p = Self::zero(wide.nvars);
        for (e, c) in &wide.terms {
            let mut e = e.clone();
            e.swap(i, j);
            p.terms.insert(e, c.clone());
        }
        p
    }

    /// Re-embeds into `n ≥ nvars` variables.
    pub fn widen(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        let mut p = Self::zero(n);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.resize(n, 0);
            p.terms.insert(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if Ring::is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if Ring::is_zero(v) {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.nvars.max(b.nvars);
        (a.widen(n), b.widen(n))
    }
}

/// Evaluates `p` at `point` by summing monomials; coordinates beyond `p`'s variables are ignored.
pub fn poly_eval<K: Field>(p: &MultiPoly, point: &[K]) -> Result<K> {
    if point.len() < p.nvars {
        return Err(Error::LengthMismatch { expected: p.nvars, got: point.len() });
    }
    let mut acc = K::zero();
    for (e, c) in &p.terms {
        let mut m = K::from_q(c);
        for (x, k) in point.iter().zip(e) {
            m = m * x.powu(*k);
        }
        acc = acc + m;
    }
    Ok(acc)
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        let (mut a, b) = Self::aligned(&self, &rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        let (a, b) = Self::aligned(&self, &rhs);
        let mut out = MultiPoly::zero(a.nvars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, Q::from(ca * cb));
            }
        }
        out
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn one() -> Self {
        MultiPoly::constant(0, Q::from(1))
    }
    fn from_i64(n: i64) -> Self {
        MultiPoly::constant(0, Q::from(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Algebra<Q> for MultiPoly {
    fn from_scalar(k: Q) -> Self {
        MultiPoly::constant(0, k)
    }
    fn scale(&self, k: &Q) -> Self {
        if Ring::is_zero(k) {
            return MultiPoly::zero(self.nvars);
        }
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c *= k;
        }
        p
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*k{}", i + 1)?,
                    _ => write!(f, "*k{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

struct Term<'a>(&'a [u32], &'a Q);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("exp", self.0)?;
        m.serialize_entry("coef", &self.1.to_string())?;
        m.end()
    }
}

struct Terms<'a>(&'a MultiPoly);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.terms.len()))?;
        for (e, c) in &self.0.terms {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("vars", &self.nvars)?;
        m.serialize_entry("terms", &Terms(self))?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    #[test]
    fn evaluation_examples() {
        let one = MultiPoly::constant(2, q(1, 1));
        assert_eq!(poly_eval(&one, &[q(3, 1), q(5, 2)]).unwrap(), q(1, 1));
        let p = MultiPoly::var(0, 2) * MultiPoly::var(1, 2);
        assert_eq!(poly_eval(&p, &[q(2, 1), q(3, 1)]).unwrap(), q(6, 1));
        assert!(matches!(poly_eval(&p, &[q(2, 1)]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let x = MultiPoly::var(0, 1);
        let d = x.clone() - x;
        assert!(d.is_empty());
        assert_eq!(d, <MultiPoly as Ring>::zero());
    }

    #[test]
    fn json_shape() {
        let p = MultiPoly::var(0, 2).scale(&q(-1, 2)) + <MultiPoly as Ring>::one();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["vars"], 2);
        assert_eq!(v["terms"][0]["exp"], serde_json::json!([0, 0]));
        assert_eq!(v["terms"][1]["coef"], "-1/2");
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 2), -5i64..=5, 1i64..=4), 0..5)
            .prop_map(|ts| MultiPoly::from_terms(2, ts.into_iter().map(|(e, p, d)| (e, q(p, d)))).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -6i64..6, y in 1i64..6) {
            let pt = [q(x, 3), q(y, 5)];
            let ea = poly_eval(&a, &pt).unwrap();
            let eb = poly_eval(&b, &pt).unwrap();
            prop_assert_eq!(poly_eval(&(a.clone() * b.clone()), &pt).unwrap(), ea.clone() * eb.clone());
            prop_assert_eq!(poly_eval(&(a + b), &pt).unwrap(), ea + eb);
        }
    }
}
