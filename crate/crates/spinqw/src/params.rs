//! Inhomogeneity sequences Ξ, S given through square-root generators, with
//! plain-shift and mixed-shift views.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_q, Field, C64, Q};
use crate::error::{Error, Result};

/// q together with generators rs[i] = √s_i and rx[i] = √ξ_i for i ≤ horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterBase<K> {
    pub q: K,
    pub rs: Vec<K>,
    pub rx: Vec<K>,
    pub horizon: usize,
}

impl<K: Field> ParameterBase<K> {
    pub fn new(q: K, rs: Vec<K>, rx: Vec<K>, horizon: usize) -> Result<Self> {
        for v in [&rs, &rx] {
            if v.len() < horizon + 1 {
                return Err(Error::LengthMismatch { expected: horizon + 1, got: v.len() });
            }
        }
        let (mut rs, mut rx) = (rs, rx);
        rs.truncate(horizon + 1);
        rx.truncate(horizon + 1);
        if rs.iter().chain(&rx).any(|g| g.is_zero()) {
            return Err(Error::Precondition("square-root generators must be nonzero".into()));
        }
        Ok(ParameterBase { q, rs, rx, horizon })
    }

    pub fn view(self) -> ParamView<K> {
        ParamView { base: Arc::new(self), o: 0, k: 0 }
    }

    /// Ξ := S.
    pub fn make_xi_equals_s(&self) -> Self {
        ParameterBase { rx: self.rs.clone(), ..self.clone() }
    }

    /// Ξ := S̄ = (s_0^{-1}, s_1^{-1}, …).
    pub fn make_xi_equals_sbar(&self) -> Result<Self> {
        let rx = self.rs.iter().map(|g| g.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(ParameterBase { rx, ..self.clone() })
    }

    /// Ξ := Ξ̄ = (ξ_0^{-1}, ξ_1^{-1}, …).
    pub fn invert_xi(&self) -> Result<Self> {
        let rx = self.rx.iter().map(|g| g.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(ParameterBase { rx, ..self.clone() })
    }

    pub fn with_rs0(&self, g: K) -> Self {
        let mut b = self.clone();
        b.rs[0] = g;
        b
    }
}

impl ParameterBase<Q> {
    /// q = 1/3, √s_i = 1/(i+2), √ξ_i = 1/(i+3), horizon 16.
    pub fn p0() -> Self {
        let h = 16;
        let rs = (0..=h).map(|i| Q::from_ratio(1, i as i64 + 2)).collect();
        let rx = (0..=h).map(|i| Q::from_ratio(1, i as i64 + 3)).collect();
        ParameterBase::new(Q::from_ratio(1, 3), rs, rx, h).expect("fixture is valid")
    }

    pub fn to_numeric(&self) -> ParameterBase<C64> {
        let c = |v: &Vec<Q>| v.iter().map(C64::from_q).collect();
        ParameterBase { q: C64::from_q(&self.q), rs: c(&self.rs), rx: c(&self.rx), horizon: self.horizon }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ParamFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        f.resolve()
    }

    pub fn to_file(&self) -> ParamFile {
        ParamFile {
            q: self.q.to_string(),
            sqrt_s: self.rs.iter().map(|x| x.to_string()).collect(),
            sqrt_xi: self.rx.iter().map(|x| x.to_string()).collect(),
            horizon: Some(self.horizon),
        }
    }
}

/// On-disk parameter format; `horizon` defaults to the shorter list length minus one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamFile {
    pub q: String,
    pub sqrt_s: Vec<String>,
    pub sqrt_xi: Vec<String>,
    #[serde(default)]
    pub horizon: Option<usize>,
}

impl ParamFile {
    pub fn resolve(&self) -> Result<ParameterBase<Q>> {
        let q = parse_q(&self.q)?;
        let rs = self.sqrt_s.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        let rx = self.sqrt_xi.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        let avail = rs.len().min(rx.len());
        if avail == 0 {
            return Err(Error::Parse("empty generator lists".into()));
        }
        let horizon = self.horizon.unwrap_or(avail - 1);
        ParameterBase::new(q, rs, rx, horizon)
    }
}

/// A view (τ^o plain shift, τ^k mixed shift) of a shared base.
#[derive(Clone, Debug)]
pub struct ParamView<K> {
    base: Arc<ParameterBase<K>>,
    o: usize,
    k: usize,
}

impl<K: Field> ParamView<K> {
    pub fn base(&self) -> &ParameterBase<K> {
        &self.base
    }

    pub fn offset(&self) -> usize {
        self.o
    }

    pub fn shift(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> &K {
        &self.base.q
    }

    pub fn horizon(&self) -> usize {
        self.base.horizon
    }

    fn idx(&self, i: usize) -> Result<(usize, usize)> {
        let j = i + self.o;
        let top = j + self.k;
        if top > self.base.horizon {
            return Err(Error::Horizon { index: top, horizon: self.base.horizon });
        }
        Ok((j, top))
    }

    /// s_i of the view: rs[j+k]·rx[j+k]·rs[j]/rx[j] with j = i + o.
    pub fn s(&self, i: usize) -> Result<K> {
        let (j, t) = self.idx(i)?;
        let b = &self.base;
        Ok(b.rs[t].clone() * b.rx[t].clone() * b.rs[j].div(&b.rx[j])?)
    }

    /// ξ_i of the view: rx[j+k]·rs[j+k]·rx[j]/rs[j].
    pub fn xi(&self, i: usize) -> Result<K> {
        let (j, t) = self.idx(i)?;
        let b = &self.base;
        Ok(b.rx[t].clone() * b.rs[t].clone() * b.rx[j].div(&b.rs[j])?)
    }

    /// √(s_i ξ_i) of the view, as a generator product.
    pub fn sx_root(&self, i: usize) -> Result<K> {
        let (_, t) = self.idx(i)?;
        Ok(self.base.rs[t].clone() * self.base.rx[t].clone())
    }

    pub fn s2(&self, i: usize) -> Result<K> {
        Ok(self.s(i)?.powu(2))
    }

    pub fn plain_shift(&self, n: usize) -> Self {
        ParamView { base: self.base.clone(), o: self.o + n, k: self.k }
    }

    /// The pair (τ^k_S Ξ, τ^k_Ξ S) seen as one view.
    pub fn mixed(&self, k: usize) -> Self {
        ParamView { base: self.base.clone(), o: self.o, k: self.k + k }
    }

    pub fn same_base(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base)
    }

    /// Base generators seen from this view; only for views without mixed shift.
    pub fn rebase(&self) -> Result<ParameterBase<K>> {
        if self.k != 0 {
            return Err(Error::Precondition("mixed-shifted views have no generator form".into()));
        }
        let b = &self.base;
        ParameterBase::new(b.q.clone(), b.rs[self.o..].to_vec(), b.rx[self.o..].to_vec(), b.horizon - self.o)
    }
}

/// (τ^k_S Ξ, τ^k_Ξ S) for two views over one base.
pub fn mixed_shift_pair<K: Field>(
    xi_view: &ParamView<K>,
    s_view: &ParamView<K>,
    k: usize,
) -> Result<(ParamView<K>, ParamView<K>)> {
    if !xi_view.same_base(s_view) || xi_view.o != s_view.o || xi_view.k != s_view.k {
        return Err(Error::Precondition("views do not share a base".into()));
    }
    Ok((xi_view.mixed(k), s_view.mixed(k)))
}

/// Ξ̂ = (1, ξ_0, ξ_1, …), Ŝ = (1, s_0, s_1, …).
pub fn hat_view<K: Field>(v: &ParamView<K>) -> Result<ParamView<K>> {
    let b = v.rebase()?;
    let mut rs = vec![K::one()];
    rs.extend(b.rs);
    let mut rx = vec![K::one()];
    rx.extend(b.rx);
    Ok(ParameterBase::new(b.q, rs, rx, b.horizon + 1)?.view())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::random::{random_base, Sampler};

    fn r(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    #[test]
    fn unshifted_accessors() {
        let v = ParameterBase::p0().view();
        for i in 0..=16 {
            let s = r(1, (i + 2) * (i + 2));
            assert_eq!(v.s(i as usize).unwrap(), s);
            assert_eq!(v.xi(i as usize).unwrap(), r(1, (i + 3) * (i + 3)));
        }
        assert!(matches!(v.s(17), Err(Error::Horizon { .. })));
        assert!(matches!(v.mixed(3).s(14), Err(Error::Horizon { .. })));
    }

    #[test]
    fn shift_relations_at_random_points() {
        let mut smp = Sampler::new(11);
        for _ in 0..10 {
            let b = random_base(&mut smp, 12);
            let v = b.clone().view();
            for o in 0..3 {
                for k in 0..4 {
                    let w = v.plain_shift(o).mixed(k);
                    for i in 0..=(12 - o - k) {
                        let j = i + o;
                        let s = |t: usize| b.rs[t].clone().powu(2);
                        let x = |t: usize| b.rx[t].clone().powu(2);
                        assert_eq!(w.s(i).unwrap() * w.xi(i).unwrap(), s(j + k) * x(j + k));
                        assert_eq!(w.s(i).unwrap().div(&w.xi(i).unwrap()).unwrap(), s(j).div(&x(j)).unwrap());
                        let direct = s(j + k) * x(j + k) * s(j).div(&x(j)).unwrap();
                        assert_eq!(w.s(i).unwrap().powu(2), direct);
                        assert_eq!(w.sx_root(i).unwrap().powu(2), s(j + k) * x(j + k));
                    }
                }
            }
        }
    }

    #[test]
    fn composition_and_plain_shift() {
        let v = ParameterBase::p0().view();
        let (a, b) = mixed_shift_pair(&v, &v, 0).unwrap();
        assert_eq!(a.s(2).unwrap(), v.s(2).unwrap());
        let (a, _) = mixed_shift_pair(&v.mixed(2), &v.mixed(2), 3).unwrap();
        let c = v.mixed(5);
        for i in 0..=11 {
            assert_eq!(a.s(i).unwrap(), c.s(i).unwrap());
            assert_eq!(a.xi(i).unwrap(), c.xi(i).unwrap());
        }
        assert_eq!(v.plain_shift(2).plain_shift(3).s(1).unwrap(), v.plain_shift(5).s(1).unwrap());
        assert_eq!(v.plain_shift(4).s(2).unwrap(), v.s(6).unwrap());
        let other = ParameterBase::p0().view();
        assert!(mixed_shift_pair(&v, &other, 1).is_err());
        let _ = b;
    }

    #[test]
    fn specializations() {
        let b = ParameterBase::p0();
        let vs = b.make_xi_equals_s().view();
        for i in 0..10 {
            assert_eq!(vs.mixed(1).s(i).unwrap(), vs.plain_shift(1).s(i).unwrap());
        }
        let vb = b.make_xi_equals_sbar().unwrap().view();
        for i in 0..10 {
            assert_eq!(vb.mixed(1).xi(i).unwrap(), vb.xi(i).unwrap());
            assert_eq!(vb.mixed(1).s(i).unwrap(), vb.s(i).unwrap());
        }
    }

    #[test]
    fn hat_extension() {
        let v = ParameterBase::p0().view().plain_shift(1);
        let h = hat_view(&v).unwrap();
        assert_eq!(h.s(0).unwrap(), r(1, 1));
        for i in 0..10 {
            assert_eq!(h.s(i + 1).unwrap(), v.s(i).unwrap());
            assert_eq!(h.xi(i + 1).unwrap(), v.xi(i).unwrap());
            assert_eq!(h.plain_shift(1).s(i).unwrap(), v.s(i).unwrap());
        }
        assert!(hat_view(&v.mixed(1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"q":"1/3","sqrt_s":["1/2","1/3","1/4"],"sqrt_xi":["1/5","1/7","1/9"],"horizon":2}"#;
        let b = ParameterBase::from_json(text).unwrap();
        assert_eq!(b.horizon, 2);
        assert_eq!(b.rs[1], r(1, 3));
        let again = ParameterBase::from_json(&serde_json::to_string(&b.to_file()).unwrap()).unwrap();
        assert_eq!(again, b);
        let bad = r#"{"q":"1/3","sqrt_s":["1/2"],"sqrt_xi":["1/5"],"horizon":4}"#;
        assert!(ParameterBase::from_json(bad).is_err());
    }
}
