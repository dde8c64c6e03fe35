//! Scalar kernels: exact rationals, complex doubles, q-Pochhammer symbols
//! and sparse multivariate polynomials.
//!
//! Exact mode runs on [`Q`], numeric mode on [`C64`]. Code that must also
//! accept polynomial indeterminates is generic over [`Algebra`].

mod poly;
mod qpoch;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub use poly::{poly_eval, MultiPoly};
pub use qpoch::{qpoch, qpoch_inf, InfProduct};
pub use rational::{format_q, parse_q};

pub type Q = rug::Rational;
pub type C64 = num_complex::Complex64;

pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn powu(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn from_q(q: &Q) -> Self;
    fn inverse(&self) -> Result<Self>;
    /// Distance from zero, used for reporting deviations.
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> C64;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inverse()?)
    }

    fn pow_int(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.powu(n as u32))
        } else {
            Ok(self.inverse()?.powu((-n) as u32))
        }
    }

    fn from_ratio(p: i64, d: i64) -> Self {
        Self::from_q(&Q::from((p, d)))
    }
}

/// A ring carrying scalar multiplication by a field; κ-indeterminates live here.
pub trait Algebra<K: Field>: Ring {
    fn from_scalar(k: K) -> Self;
    fn scale(&self, k: &K) -> Self;
}

impl<K: Field> Algebra<K> for K {
    fn from_scalar(k: K) -> Self {
        k
    }
    fn scale(&self, k: &K) -> Self {
        self.clone() * k.clone()
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Q::new()
    }
    fn one() -> Self {
        Q::from(1)
    }
    fn from_i64(n: i64) -> Self {
        Q::from(n)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
}

impl Field for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn inverse(&self) -> Result<Self> {
        if Ring::is_zero(self) {
            return Err(Error::Pole("division by exact zero".into()));
        }
        Ok(self.clone().recip())
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64(), 0.0)
    }
}

impl Ring for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for C64 {
    fn from_q(q: &Q) -> Self {
        C64::new(q.to_f64(), 0.0)
    }
    fn inverse(&self) -> Result<Self> {
        let r = C64::new(1.0, 0.0) / *self;
        if Ring::is_zero(self) || !r.is_finite() {
            return Err(Error::Pole(format!("division by {self}")));
        }
        Ok(r)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

/// Product of a list of field elements.
pub fn product<K: Ring>(items: impl IntoIterator<Item = K>) -> K {
    items.into_iter().fold(K::one(), |a, b| a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let a = Q::from((6, -4));
        assert_eq!(a, Q::from((-3, 2)));
        assert!(*a.denom() > 0);
    }

    #[test]
    fn pow_and_powi() {
        let x = Q::from_ratio(2, 3);
        assert_eq!(x.powu(3), Q::from_ratio(8, 27));
        assert_eq!(x.pow_int(-2).unwrap(), Q::from_ratio(9, 4));
        assert_eq!(x.powu(0), <Q as Ring>::one());
    }

    #[test]
    fn zero_division_is_a_pole() {
        assert!(matches!(<Q as Ring>::zero().inverse(), Err(Error::Pole(_))));
        assert!(matches!(<C64 as Ring>::zero().inverse(), Err(Error::Pole(_))));
    }
}
