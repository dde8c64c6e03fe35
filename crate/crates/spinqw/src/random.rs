//! Seeded random rational points.
//!
//! A rational is drawn as numerator p uniform in [-97, 97] \ {0} and
//! denominator d uniform in [1, 97], both from one ChaCha8 stream seeded by
//! the run seed. Callers reject draws that hit a pole and draw again.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, Q};
use crate::error::{Error, Result};
use crate::params::ParameterBase;

pub const BOUND: i64 = 97;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Q {
        let mut p = 0;
        while p == 0 {
            p = self.rng.gen_range(-BOUND..=BOUND);
        }
        let d = self.rng.gen_range(1..=BOUND);
        Q::from_ratio(p, d)
    }

    /// A rational other than 0, 1 and −1.
    pub fn generic(&mut self) -> Q {
        loop {
            let x = self.rational();
            if x.numer().cmp_abs(x.denom()) != std::cmp::Ordering::Equal {
                return x;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.gen()
    }

    /// Draws with `f` until it succeeds, giving up after 200 pole hits.
    pub fn retry<T>(&mut self, mut f: impl FnMut(&mut Self) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..200 {
            match f(self) {
                Ok(v) => return Ok(v),
                Err(e @ Error::Pole(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Pole("rejection loop exhausted".into())))
    }
}

/// Random q and generators up to `horizon`.
pub fn random_base(smp: &mut Sampler, horizon: usize) -> ParameterBase<Q> {
    let q = smp.generic();
    let rs = (0..=horizon).map(|_| smp.generic()).collect();
    let rx = (0..=horizon).map(|_| smp.generic()).collect();
    ParameterBase::new(q, rs, rx, horizon).expect("generators are nonzero")
}

/// Random scalars, one per slot.
pub fn random_vec(smp: &mut Sampler, n: usize) -> Vec<Q> {
    (0..n).map(|_| smp.generic()).collect()
}

pub fn as_field<K: Field>(v: &[Q]) -> Vec<K> {
    v.iter().map(K::from_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let mut a = Sampler::new(5);
        let mut b = Sampler::new(5);
        for _ in 0..200 {
            let x = a.rational();
            assert_eq!(x, b.rational());
            assert!(*x.denom() <= BOUND);
        }
    }
}
