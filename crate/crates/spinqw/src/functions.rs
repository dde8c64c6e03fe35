//! Spin q-Whittaker functions F and stable spin Hall-Littlewood functions F̃,
//! with their normalizations and dual versions.

use itertools::Itertools;

use crate::algebra::{qpoch, Algebra, Field};
use crate::error::{Error, Result};
use crate::lattice::{zw_grid, zw_small_grid, RowCtx};
use crate::params::ParamView;
use crate::partitions::{interlaces, Partition};
use crate::rowops::{apply_btilde, apply_bstar, apply_c, basis, c_norm, neg_s_power, s2_power, PartBox, State};

/// Normalization data of a partition on a view.
#[derive(Clone, Debug, PartialEq)]
pub struct NormData<K> {
    pub c: K,
    pub signed_power: K,
    pub squared_power: K,
}

impl<K: Field> NormData<K> {
    pub fn new(lambda: &Partition, v: &ParamView<K>) -> Result<Self> {
        Ok(NormData { c: c_norm(lambda, v)?, signed_power: neg_s_power(lambda, v)?, squared_power: s2_power(lambda, v)? })
    }
}

/// C(κ_1|τ^1)…C(κ_n|τ^n)|μ⟩ restricted to `bx`.
pub fn f_s_all<K: Field, R: Algebra<K>>(mu: &Partition, kappa: &[R], v: &ParamView<K>, bx: PartBox) -> Result<State<R>> {
    let mut state = basis::<R>(mu);
    for i in (1..=kappa.len()).rev() {
        state = apply_c(&state, &kappa[i - 1], &v.mixed(i), bx)?;
    }
    Ok(state)
}

/// F^s_{λ/μ}(κ_1..κ_n | Ξ, S).
pub fn f_s<K: Field, R: Algebra<K>>(lambda: &Partition, mu: &Partition, kappa: &[R], v: &ParamView<K>) -> Result<R> {
    if !lambda.contains(mu) {
        return Ok(R::zero());
    }
    let bx = PartBox::new(lambda.len(), lambda.first());
    let mut state = f_s_all(mu, kappa, v, bx)?;
    Ok(state.remove(lambda).unwrap_or_else(R::zero))
}

/// Factor turning F^s_{λ/μ} into F_{λ/μ} for n variables.
pub fn f_factor<K: Field>(lambda: &Partition, mu: &Partition, n: usize, v: &ParamView<K>) -> Result<K> {
    let tn = v.mixed(n);
    let (a, b) = (NormData::new(mu, &tn)?, NormData::new(lambda, v)?);
    (a.signed_power * a.c).div(&(b.signed_power * b.c))
}

pub fn f<K: Field, R: Algebra<K>>(lambda: &Partition, mu: &Partition, kappa: &[R], v: &ParamView<K>) -> Result<R> {
    Ok(f_s(lambda, mu, kappa, v)?.scale(&f_factor(lambda, mu, kappa.len(), v)?))
}

/// F*_{λ/μ} = c_S(λ)/c_{τ^n S}(μ) · F_{λ/μ}.
pub fn f_star<K: Field, R: Algebra<K>>(lambda: &Partition, mu: &Partition, kappa: &[R], v: &ParamView<K>) -> Result<R> {
    let r = c_norm(lambda, v)?.div(&c_norm(mu, &v.mixed(kappa.len()))?)?;
    Ok(f(lambda, mu, kappa, v)?.scale(&r))
}

/// Factor turning F^s_{λ/μ} into F^{s*}_{λ/μ}.
pub fn f_s_star_factor<K: Field>(lambda: &Partition, mu: &Partition, n: usize, v: &ParamView<K>) -> Result<K> {
    let tn = v.mixed(n);
    let (a, b) = (NormData::new(mu, &tn)?, NormData::new(lambda, v)?);
    (a.squared_power * a.c).div(&(b.squared_power * b.c))
}

pub fn f_s_star<K: Field, R: Algebra<K>>(lambda: &Partition, mu: &Partition, kappa: &[R], v: &ParamView<K>) -> Result<R> {
    Ok(f_s(lambda, mu, kappa, v)?.scale(&f_s_star_factor(lambda, mu, kappa.len(), v)?))
}

/// ⟨·|𝔹*(κ_n|τ^{n−1})…𝔹*(κ_1|Ξ,S)|λ⟩ as a state indexed by μ.
pub fn bstar_product<K: Field>(lambda: &Partition, kappa: &[K], v: &ParamView<K>) -> Result<State<K>> {
    let mut state = basis::<K>(lambda);
    for (i, k) in kappa.iter().enumerate() {
        state = apply_bstar(&state, k, &v.mixed(i))?;
    }
    Ok(state)
}

/// F^s from the multi-row lattice, summing over left boundary labels.
pub fn f_via_grid<K: Field, R: Algebra<K>>(lambda: &Partition, mu: &Partition, kappa: &[R], v: &ParamView<K>) -> Result<R> {
    let Some(total) = lambda.first().checked_sub(mu.first()) else { return Ok(R::zero()) };
    let n = kappa.len();
    let ctxs: Vec<RowCtx<K>> = (1..=n).map(|i| RowCtx::new(&v.mixed(i), 0, total + 1)).collect::<Result<_>>()?;
    let mut sum = R::zero();
    for a in compositions(total, n) {
        let mut coef = R::one();
        for (i, &ai) in a.iter().enumerate() {
            coef = coef * ctxs[i].c_coeff(ai, &kappa[i])?;
        }
        if coef.is_zero() {
            continue;
        }
        sum = sum + coef * zw_grid(&a, lambda, mu, kappa, v)?;
    }
    Ok(sum)
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Factorized value of F_{λ/μ}(κ) for a single variable.
pub fn f_one_var_closed<K: Field>(lambda: &Partition, mu: &Partition, kappa: &K, v: &ParamView<K>) -> Result<K> {
    if !interlaces(lambda, mu) {
        return Ok(K::zero());
    }
    let q = v.q();
    let d = (lambda.size() - mu.size()) as u32;
    let mut acc = (-kappa.clone()).powu(d);
    for i in 1..=lambda.len() {
        let (li, mi, ln) = (lambda.part(i), mu.part(i), lambda.part(i + 1));
        let (s, xi) = (v.s(i)?, v.xi(i)?);
        acc = acc * v.xi(i - 1)?.pow_int(mi as i64 - li as i64)?;
        acc = acc * v.sx_root(i)?.div(&v.sx_root(i - 1)?)?.powu(mi as u32);
        let num = qpoch(&(s.clone() * xi.clone()).div(kappa)?, q, li - mi)
            * qpoch(&(kappa.clone() * s.div(&xi)?), q, mi - ln)
            * qpoch(q, q, li - ln);
        let den = qpoch(q, q, li - mi) * qpoch(q, q, mi - ln) * qpoch(&s.powu(2), q, li - ln);
        acc = acc * num.div(&den)?;
    }
    Ok(acc)
}

/// F̃^s_{ν/ρ}(u): ν, ρ index the function, the lattice boundaries are ν′, ρ′.
pub fn fhl_s<K: Field>(nu: &Partition, rho: &Partition, u: &[K], v: &ParamView<K>) -> Result<K> {
    let (lam, mu) = (nu.conjugate(), rho.conjugate());
    let Some(total) = lam.first().checked_sub(mu.first()) else { return Ok(K::zero()) };
    let n = u.len();
    if total > n {
        return Ok(K::zero());
    }
    let base = v.xi(0)? * v.s(0)?;
    let mut sum = K::zero();
    for a in compositions(total, n) {
        if a.iter().any(|&x| x > 1) {
            continue;
        }
        let mut coef = K::one();
        for (ai, ui) in a.iter().zip(u) {
            if *ai == 1 {
                coef = coef * -(ui.clone() * base.clone());
            }
        }
        sum = sum + coef * zw_small_grid(&a, &lam, &mu, u, v)?;
    }
    Ok(sum)
}

pub fn fhl<K: Field>(nu: &Partition, rho: &Partition, u: &[K], v: &ParamView<K>) -> Result<K> {
    let (lam, mu) = (nu.conjugate(), rho.conjugate());
    let (a, b) = (NormData::new(&mu, v)?, NormData::new(&lam, v)?);
    let factor = (a.signed_power * a.c).div(&(b.signed_power * b.c))?;
    Ok(factor * fhl_s(nu, rho, u, v)?)
}

/// F̃* = c_S(ν′)/c_S(ρ′) · F̃.
pub fn fhl_star<K: Field>(nu: &Partition, rho: &Partition, u: &[K], v: &ParamView<K>) -> Result<K> {
    let r = c_norm(&nu.conjugate(), v)?.div(&c_norm(&rho.conjugate(), v)?)?;
    Ok(r * fhl(nu, rho, u, v)?)
}

pub fn fhl_s_star<K: Field>(nu: &Partition, rho: &Partition, u: &[K], v: &ParamView<K>) -> Result<K> {
    let (lam, mu) = (nu.conjugate(), rho.conjugate());
    let (a, b) = (NormData::new(&mu, v)?, NormData::new(&lam, v)?);
    let factor = (a.squared_power * a.c).div(&(b.squared_power * b.c))?;
    Ok(factor * fhl_s(nu, rho, u, v)?)
}

/// ⟨·|B̃*(u_n)…B̃*(u_1)|λ⟩ on one view, as a state indexed by μ.
pub fn btilde_product<K: Field>(lambda: &Partition, u: &[K], v: &ParamView<K>) -> Result<State<K>> {
    let mut state = basis::<K>(lambda);
    for x in u {
        state = apply_btilde(&state, x, v)?;
    }
    Ok(state)
}

/// φ̃_k(u | Ξ, S).
pub fn phi_tilde<K: Field>(k: usize, u: &K, v: &ParamView<K>) -> Result<K> {
    let q = v.q();
    let one = K::one();
    if k == 0 {
        return Ok(one - q.clone());
    }
    let mut acc = (v.xi(0)? * u.clone() * (one.clone() - q.clone()))
        .div(&(one.clone() - v.s(k)? * v.xi(k)? * u.clone()))?;
    for j in 1..k {
        let (s, xi) = (v.s(j)?, v.xi(j)?);
        acc = acc * (xi.clone() * u.clone() - s.clone()).div(&(one.clone() - s * xi * u.clone()))?;
    }
    Ok(acc)
}

/// F̃_λ(u_1..u_n) through the symmetrization formula; needs pairwise distinct u.
pub fn fhl_symmetrized<K: Field>(lambda: &Partition, u: &[K], v: &ParamView<K>) -> Result<K> {
    let n = u.len();
    if lambda.len() > n {
        return Ok(K::zero());
    }
    let q = v.q();
    let mut total = K::zero();
    for perm in (0..n).permutations(n) {
        let x: Vec<&K> = perm.iter().map(|&i| &u[i]).collect();
        let mut term = K::one();
        for a in 0..n {
            for b in a + 1..n {
                let den = x[a].clone() - x[b].clone();
                if den.is_zero() {
                    return Err(Error::Precondition("symmetrization needs distinct variables".into()));
                }
                term = term * (x[a].clone() - q.clone() * x[b].clone()).div(&den)?;
            }
            term = term * phi_tilde(lambda.part(a + 1), x[a], v)?;
        }
        total = total + term;
    }
    total.div(&qpoch(q, q, n - lambda.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{poly_eval, MultiPoly, Ring, Q};
    use crate::params::ParameterBase;
    use crate::partitions::{enum_box, enum_up_to_size};
    use crate::random::{random_base, random_vec, Sampler};

    fn r(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn trivial_values() {
        let v = ParameterBase::p0().view();
        let e = Partition::empty();
        assert_eq!(f_s(&e, &e, &[r(1, 3)], &v).unwrap(), Q::one());
        assert_eq!(f(&e, &e, &[r(1, 3), r(1, 5)], &v).unwrap(), Q::one());
        assert_eq!(f_star(&e, &e, &[r(1, 3)], &v).unwrap(), Q::one());
        assert_eq!(fhl(&e, &e, &[r(1, 3)], &v).unwrap(), Q::one());
        assert_eq!(phi_tilde(0, &r(1, 2), &v).unwrap(), Q::one() - v.q().clone());
        assert_eq!(fhl_symmetrized(&e, &[r(1, 2)], &v).unwrap(), Q::one());
    }

    #[test]
    fn single_box_value() {
        let v = ParameterBase::p0().view();
        let kappa = r(1, 4);
        let want = (v.s(1).unwrap() * v.xi(1).unwrap() - kappa.clone())
            / (v.xi(0).unwrap() * (Q::one() - v.s(1).unwrap().powu(2)));
        assert_eq!(f(&p(&[1]), &Partition::empty(), &[kappa.clone()], &v).unwrap(), want);
        assert_eq!(f_one_var_closed(&p(&[1]), &Partition::empty(), &kappa, &v).unwrap(), want);
    }

    #[test]
    fn chain_matches_grid() {
        let v = ParameterBase::p0().view();
        let kappa = [r(1, 4), r(-2, 5)];
        for lam in enum_up_to_size(5) {
            for mu in enum_up_to_size(2) {
                let a = f_s(&lam, &mu, &kappa, &v).unwrap();
                assert_eq!(a, f_via_grid(&lam, &mu, &kappa, &v).unwrap(), "{lam} {mu}");
            }
        }
    }

    #[test]
    fn one_variable_closed_form() {
        let mut smp = Sampler::new(21);
        let base = random_base(&mut smp, 12);
        let v = base.view();
        let kappa = smp.rational();
        for lam in enum_box(3, 3) {
            for mu in enum_box(3, 3) {
                let got = f(&lam, &mu, &[kappa.clone()], &v).unwrap();
                assert_eq!(got, f_one_var_closed(&lam, &mu, &kappa, &v).unwrap(), "{lam} {mu}");
            }
        }
    }

    #[test]
    fn stability() {
        let v = ParameterBase::p0().view();
        let kappa = [r(1, 4), r(2, 7)];
        for lam in enum_up_to_size(4) {
            let last = v.s(3).unwrap() * v.xi(3).unwrap();
            let long = f(&lam, &Partition::empty(), &[kappa[0].clone(), kappa[1].clone(), last], &v).unwrap();
            assert_eq!(long, f(&lam, &Partition::empty(), &kappa, &v).unwrap(), "{lam}");
        }
    }

    #[test]
    fn symmetric_in_kappa() {
        let v = ParameterBase::p0().view();
        let x = MultiPoly::var(0, 2);
        let y = MultiPoly::var(1, 2);
        for lam in enum_up_to_size(4) {
            let a = f(&lam, &p(&[1]), &[x.clone(), y.clone()], &v).unwrap();
            assert_eq!(a.swap_vars(0, 1), a, "{lam}");
            let val = poly_eval(&a, &[r(1, 3), r(2, 9)]).unwrap();
            assert_eq!(val, f(&lam, &p(&[1]), &[r(1, 3), r(2, 9)], &v).unwrap());
        }
    }

    #[test]
    fn dual_via_bstar_chain() {
        let v = ParameterBase::p0().view();
        let kappa = [r(1, 4), r(2, 7)];
        for lam in enum_box(3, 3) {
            let chain = bstar_product(&lam, &kappa, &v).unwrap();
            for mu in enum_box(3, 3) {
                let want = f_s_star(&lam, &mu, &kappa, &v).unwrap();
                assert_eq!(chain.get(&mu).cloned().unwrap_or_else(Q::zero), want, "{lam} {mu}");
            }
        }
    }

    #[test]
    fn hall_littlewood_dual_chain() {
        let v = ParameterBase::p0().view();
        let u = [r(1, 4), r(-2, 7)];
        for nu in enum_up_to_size(4) {
            let lam = nu.conjugate();
            let chain = btilde_product(&lam, &u, &v).unwrap();
            for rho in enum_up_to_size(3) {
                let want = fhl_s_star(&nu, &rho, &u, &v).unwrap();
                assert_eq!(chain.get(&rho.conjugate()).cloned().unwrap_or_else(Q::zero), want, "{nu} {rho}");
            }
        }
    }

    #[test]
    fn hall_littlewood_symmetrization() {
        let v = ParameterBase::p0().view();
        let mut smp = Sampler::new(3);
        for n in 1..=3 {
            let u = random_vec(&mut smp, n);
            for lam in enum_up_to_size(4) {
                if lam.len() > n {
                    continue;
                }
                let a = fhl(&lam, &Partition::empty(), &u, &v).unwrap();
                assert_eq!(a, fhl_symmetrized(&lam, &u, &v).unwrap(), "{lam} n={n}");
            }
        }
    }

    #[test]
    fn hall_littlewood_stability_and_s0() {
        let b = ParameterBase::p0();
        let v = b.clone().view();
        let w = b.with_rs0(r(3, 7)).view();
        let u = [r(1, 4), r(2, 9)];
        for lam in enum_up_to_size(4) {
            let e = Partition::empty();
            let long = fhl(&lam, &e, &[u[0].clone(), u[1].clone(), Q::zero()], &v).unwrap();
            assert_eq!(long, fhl(&lam, &e, &u, &v).unwrap());
            assert_eq!(fhl(&lam, &e, &u, &w).unwrap(), fhl(&lam, &e, &u, &v).unwrap());
        }
    }
}
