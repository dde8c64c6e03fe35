//! Local vertex weights.
//!
//! Label conventions: `(i, j; k, l)` is (bottom, left; top, right) for the
//! rightward families and `(i, l; k, j)` is (bottom, right; top, left) for
//! the dual families, whose horizontal paths travel leftwards.

mod colored;

use crate::algebra::{qpoch, Field};
use crate::error::{Error, Result};

pub use colored::{compositions, w_big_col, w_col, Composition};

fn thin(label: usize, name: &str) -> Result<()> {
    if label > 1 {
        return Err(Error::Precondition(format!("thin label {name} = {label} is not in {{0,1}}")));
    }
    Ok(())
}

/// Gaussian binomial (q;q)_n / ((q;q)_k (q;q)_{n−k}).
pub fn qbinom<K: Field>(q: &K, n: usize, k: usize) -> Result<K> {
    if k > n {
        return Ok(K::zero());
    }
    let num = qpoch(q, q, n);
    let den = qpoch(q, q, k) * qpoch(q, q, n - k);
    num.div(&den)
}

fn one_minus<K: Field>(x: K) -> K {
    K::one() - x
}

/// Higher-spin weight w^s_{u;s}(i, j; k, l).
pub fn w_s<K: Field>(q: &K, u: &K, s: &K, i: usize, j: usize, k: usize, l: usize) -> Result<K> {
    thin(j, "j")?;
    thin(l, "l")?;
    if i + j != k + l {
        return Ok(K::zero());
    }
    let su = s.clone() * u.clone();
    let den = one_minus(su.clone());
    let qg = q.powu(i as u32);
    let num = match (j, l) {
        (0, 0) => one_minus(su * qg),
        (0, 1) => (qg - K::one()) * su,
        (1, 0) => one_minus(s.powu(2) * qg),
        _ => s.powu(2) * qg - su,
    };
    num.div(&den)
}

/// Dual weight w^{s*}_{u;s}(i, l; k, j).
pub fn w_s_star<K: Field>(q: &K, u: &K, s: &K, i: usize, l: usize, k: usize, j: usize) -> Result<K> {
    thin(j, "j")?;
    thin(l, "l")?;
    if i + l != k + j {
        return Ok(K::zero());
    }
    let su = s.clone() * u.clone();
    let den = one_minus(su.clone());
    let qg = q.powu(i as u32);
    let num = match (j, l) {
        (0, 0) => one_minus(su * qg),
        (0, 1) => -(u.div(s)?) * one_minus(s.powu(2) * qg),
        (1, 0) => one_minus(qg),
        _ => qg - u.div(s)?,
    };
    num.div(&den)
}

/// Six-vertex R-matrix R_z(i, j; k, l).
pub fn r_matrix<K: Field>(q: &K, z: &K, i: usize, j: usize, k: usize, l: usize) -> Result<K> {
    for (x, n) in [(i, "i"), (j, "j"), (k, "k"), (l, "l")] {
        thin(x, n)?;
    }
    let one = K::one();
    Ok(match (i, j, k, l) {
        (0, 0, 0, 0) | (1, 1, 1, 1) => one - q.clone() * z.clone(),
        (0, 1, 0, 1) => one - z.clone(),
        (0, 1, 1, 0) => z.clone() * (one - q.clone()),
        (1, 0, 0, 1) => one - q.clone(),
        (1, 0, 1, 0) => q.clone() * (one - z.clone()),
        _ => K::zero(),
    })
}

/// R*_z = R_{1/z}.
pub fn r_star<K: Field>(q: &K, z: &K, i: usize, j: usize, k: usize, l: usize) -> Result<K> {
    r_matrix(q, &z.inverse()?, i, j, k, l)
}

/// The bracket shared by W^s and its relatives: 1_{i≥l} times the q-Hahn factor.
fn q_hahn<K: Field>(q: &K, t2: &K, s2: &K, i: usize, l: usize) -> Result<K> {
    if i < l {
        return Ok(K::zero());
    }
    let r = s2.div(t2)?;
    let num = r.powu(l as u32) * qpoch(&r, q, i - l) * qpoch(t2, q, l);
    Ok(num.div(&qpoch(s2, q, i))? * qbinom(q, i, l)?)
}

/// q-Hahn weight W^s_{t,s}(i, j; k, l), given t² and s².
pub fn w_big<K: Field>(q: &K, t2: &K, s2: &K, i: usize, j: usize, k: usize, l: usize) -> Result<K> {
    if i + j != k + l {
        return Ok(K::zero());
    }
    q_hahn(q, t2, s2, i, l)
}

/// Dual q-Hahn weight W^{s*}_{t,s}(i, l; k, j), given t² and s².
pub fn w_big_star<K: Field>(q: &K, t2: &K, s2: &K, i: usize, l: usize, k: usize, j: usize) -> Result<K> {
    if i + l != j + k || i < j {
        return Ok(K::zero());
    }
    let r = s2.div(t2)?;
    let num = t2.powu((i - j) as u32) * qpoch(&r, q, i - j) * qpoch(t2, q, j);
    Ok(num.div(&qpoch(s2, q, i))? * qbinom(q, i, j)?)
}

/// φ(a, b; x, y) = (y/x)^a (x;q)_a (y/x;q)_{b−a}/(y;q)_b · (q;q)_b/((q;q)_a (q;q)_{b−a}).
pub fn phi<K: Field>(q: &K, a: usize, b: usize, x: &K, y: &K) -> Result<K> {
    if a > b {
        return Ok(K::zero());
    }
    let r = y.div(x)?;
    let num = r.powu(a as u32) * qpoch(x, q, a) * qpoch(&r, q, b - a);
    Ok(num.div(&qpoch(y, q, b))? * qbinom(q, b, a)?)
}

/// Fused weight with q^J replaced by the scalar `qj`.
pub fn w_fused_cont<K: Field>(
    q: &K,
    qj: &K,
    u: &K,
    s: &K,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<K> {
    if i + j != k + l {
        return Ok(K::zero());
    }
    let su = s.clone() * u.clone();
    let x1 = su.clone() * qj.clone();
    let x2 = s.div(&(qj.clone() * u.clone()))?;
    let y2 = qj.inverse()?;
    let mut sum = K::zero();
    for p in 0..=j.min(k) {
        sum = sum + phi(q, k - p, k + l - p, &x1, &su)? * phi(q, p, j, &x2, &y2)?;
    }
    let pre = u.pow_int(l as i64 - j as i64)? * qj.powu(i as u32) * s.powu((j + l) as u32);
    Ok(pre * sum)
}

/// Fused weight W^{(J)}_{u;s}(i, j; k, l).
pub fn w_fused<K: Field>(q: &K, fuse: usize, u: &K, s: &K, i: usize, j: usize, k: usize, l: usize) -> Result<K> {
    if j > fuse || l > fuse {
        return Err(Error::Precondition(format!("horizontal labels {j},{l} exceed J = {fuse}")));
    }
    w_fused_cont(q, &q.powu(fuse as u32), u, s, i, j, k, l)
}

/// Output of a continued dual vertex: top label β = q^shift · α.
#[derive(Clone, Debug, PartialEq)]
pub struct ContOut<K> {
    pub shift: i64,
    pub beta: K,
    pub weight: K,
}

/// Continued dual weight w̃^{s*}_{u;s}(α, l; β, j).
pub fn w_tilde_star<K: Field>(q: &K, u: &K, s: &K, alpha: &K, l: usize, j: usize) -> Result<ContOut<K>> {
    thin(j, "j")?;
    thin(l, "l")?;
    let den = one_minus(s.clone() * u.clone());
    let (shift, num) = match (j, l) {
        (0, 0) => (0, one_minus(s.clone() * u.clone() * alpha.clone())),
        (0, 1) => (1, -(u.div(s)?) * one_minus(s.powu(2) * alpha.clone())),
        (1, 0) => (-1, one_minus(alpha.clone())),
        _ => (0, alpha.clone() - u.div(s)?),
    };
    let beta = alpha.clone() * q.pow_int(shift)?;
    Ok(ContOut { shift, beta, weight: num.div(&den)? })
}

/// W̃^s_{t,s}(i, α; q^Δ α, l); independent of α.
pub fn w_tilde<K: Field>(q: &K, t2: &K, s2: &K, i: usize, delta: i64, l: usize) -> Result<K> {
    if delta < 0 || delta != i as i64 - l as i64 {
        return Ok(K::zero());
    }
    q_hahn(q, t2, s2, i, l)
}

/// Ŵ^s_{t,s} with left j, right α = q^N, bottom q^Δ α, top k.
pub fn w_hat<K: Field>(q: &K, t2: &K, s2: &K, n: usize, delta: i64, j: usize, k: usize) -> Result<K> {
    if delta < 0 || delta != k as i64 - j as i64 {
        return Ok(K::zero());
    }
    let d = delta as usize;
    let r = s2.div(t2)?;
    let qn1 = q.powu(n as u32 + 1);
    let num = r.powu(n as u32) * qpoch(&qn1, q, d) * qpoch(&r, q, d) * qpoch(t2, q, n);
    num.div(&(qpoch(q, q, d) * qpoch(s2, q, n + d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Ring, Q};
    use crate::params::ParameterBase;
    use crate::random::Sampler;

    fn r(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    struct Pt {
        q: Q,
        u: Q,
        s: Q,
        t2: Q,
    }

    fn p0_point() -> Pt {
        let b = ParameterBase::p0();
        Pt { q: b.q.clone(), u: r(2, 7), s: b.rs[1].clone().powu(2), t2: r(3, 11) }
    }

    fn random_points(n: usize) -> Vec<Pt> {
        let mut smp = Sampler::new(2024);
        (0..n).map(|_| Pt { q: smp.generic(), u: smp.generic(), s: smp.generic(), t2: smp.generic() }).collect()
    }

    #[test]
    fn table_examples() {
        let Pt { q, u, s, .. } = p0_point();
        let su = s.clone() * u.clone();
        for g in 0..5 {
            let qg = q.powu(g);
            let e = (Q::one() - su.clone() * qg.clone()).div(&(Q::one() - su.clone())).unwrap();
            assert_eq!(w_s(&q, &u, &s, g as usize, 0, g as usize, 0).unwrap(), e);
            assert_eq!(w_s_star(&q, &u, &s, g as usize, 0, g as usize, 0).unwrap(), e);
        }
        assert_eq!(w_s(&q, &u, &s, 2, 1, 2, 0).unwrap(), Q::zero());
        assert!(w_s(&q, &u, &s, 2, 2, 3, 1).is_err());
        let pole = w_s(&q, &r(1, 2), &r(2, 1), 0, 0, 0, 0);
        assert!(matches!(pole, Err(Error::Pole(_))));
    }

    #[test]
    fn r_matrix_examples() {
        let (q, z) = (r(1, 3), r(5, 7));
        assert_eq!(r_matrix(&q, &z, 0, 0, 0, 0).unwrap(), Q::one() - q.clone() * z.clone());
        assert_eq!(r_matrix(&q, &z, 1, 0, 0, 1).unwrap(), Q::one() - q.clone());
        assert_eq!(r_matrix(&q, &z, 0, 0, 1, 1).unwrap(), Q::zero());
        assert_eq!(r_star(&q, &z, 0, 1, 0, 1).unwrap(), Q::one() - z.inverse().unwrap());
    }

    #[test]
    fn conservation_everywhere() {
        let Pt { q, u, s, t2 } = p0_point();
        let s2 = s.powu(2);
        for i in 0..=6 {
            for k in 0..=6 {
                for j in 0..=1 {
                    for l in 0..=1 {
                        if i + j != k + l {
                            assert!(w_s(&q, &u, &s, i, j, k, l).unwrap().is_zero());
                        }
                        if i + l != k + j {
                            assert!(w_s_star(&q, &u, &s, i, l, k, j).unwrap().is_zero());
                        }
                    }
                }
                for j in 0..=6 {
                    for l in 0..=6 {
                        if i + j != k + l {
                            assert!(w_big(&q, &t2, &s2, i, j, k, l).unwrap().is_zero());
                            if j <= 3 && l <= 3 {
                                assert!(w_fused(&q, 3, &u, &s, i, j, k, l).unwrap().is_zero());
                            }
                        }
                        if i + l != j + k {
                            assert!(w_big_star(&q, &t2, &s2, i, l, k, j).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stochasticity_at_random_points() {
        let mut pts = random_points(20);
        pts.push(p0_point());
        for Pt { q, u, s, t2 } in pts {
            let s2 = s.powu(2);
            for i in 0..=5 {
                for j in 0..=1 {
                    let tot = (0..=1.min(i + j)).fold(Q::zero(), |a, l| a + w_s(&q, &u, &s, i, j, i + j - l, l).unwrap());
                    assert_eq!(tot, Q::one());
                }
                for j in 0..=5 {
                    let tot = (0..=i + j).fold(Q::zero(), |a, l| a + w_big(&q, &t2, &s2, i, j, i + j - l, l).unwrap());
                    assert_eq!(tot, Q::one());
                }
                for fuse in 1..=3 {
                    for j in 0..=fuse {
                        let tot = (0..=fuse.min(i + j)).fold(Q::zero(), |a, l| {
                            a + w_fused(&q, fuse, &u, &s, i, j, i + j - l, l).unwrap()
                        });
                        assert_eq!(tot, Q::one());
                    }
                }
            }
        }
    }

    #[test]
    fn dual_rescalings() {
        for Pt { q, u, s, t2 } in random_points(6).into_iter().chain([p0_point()]) {
            let s2 = s.powu(2);
            let qq = |n: usize| qpoch(&q, &q, n);
            let ss = |n: usize| qpoch(&s2, &q, n);
            let tt = |n: usize| qpoch(&t2, &q, n);
            for i in 0..=5 {
                for k in 0..=5 {
                    for j in 0..=1 {
                        for l in 0..=1 {
                            let lhs = w_s_star(&q, &u, &s, i, l, k, j).unwrap();
                            let resc = s2.pow_int(-(l as i64)).unwrap() * qq(i).div(&ss(i)).unwrap()
                                * ss(k).div(&qq(k)).unwrap()
                                * w_s(&q, &u, &s, k, j, i, l).unwrap();
                            assert_eq!(lhs, resc);
                            let f = (s.clone() - u.clone()).div(&(s.clone() * (Q::one() - u.clone() * s.clone()))).unwrap();
                            let dc = f * w_s(&q, &u.inverse().unwrap(), &s, i, 1 - j, k, 1 - l).unwrap();
                            assert_eq!(lhs, dc);
                        }
                    }
                    for j in 0..=5 {
                        for l in 0..=5 {
                            let lhs = w_big_star(&q, &t2, &s2, i, l, k, j).unwrap();
                            let resc = s2.pow_int(-(l as i64)).unwrap()
                                * qq(i).div(&ss(i)).unwrap()
                                * ss(k).div(&qq(k)).unwrap()
                                * t2.powu(k as u32)
                                * tt(j).div(&qq(j)).unwrap()
                                * qq(l).div(&tt(l)).unwrap()
                                * w_big(&q, &t2, &s2, k, j, i, l).unwrap();
                            assert_eq!(lhs, resc, "{i} {l} {k} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fused_special_cases() {
        let Pt { q, u, s, t2 } = p0_point();
        for i in 0..=4 {
            for k in 0..=4 {
                for j in 0..=1 {
                    for l in 0..=1 {
                        assert_eq!(w_fused(&q, 1, &u, &s, i, j, k, l).unwrap(), w_s(&q, &u, &s, i, j, k, l).unwrap());
                    }
                }
                for j in 0..=4 {
                    for l in 0..=4 {
                        let cont = w_fused_cont(&q, &t2.inverse().unwrap(), &s, &s, i, j, k, l).unwrap();
                        assert_eq!(cont, w_big(&q, &t2, &s.powu(2), i, j, k, l).unwrap());
                    }
                }
            }
        }
        assert!(w_fused(&q, 2, &u, &s, 0, 3, 3, 0).is_err());
    }

    #[test]
    fn continued_dual_weights() {
        for Pt { q, u, s, .. } in random_points(5).into_iter().chain([p0_point()]) {
            let eta = r(3, 4);
            for i in 0..=5usize {
                for j in 0..=1 {
                    for l in 0..=1 {
                        if i + l < j {
                            continue;
                        }
                        let k = i + l - j;
                        let out = w_tilde_star(&q, &u, &s, &q.powu(i as u32), l, j).unwrap();
                        assert_eq!(out.beta, q.powu(k as u32));
                        assert_eq!(out.weight, w_s_star(&q, &u, &s, i, l, k, j).unwrap());
                        let e2 = eta.powu(2);
                        let alpha = e2.powu(1 - j as u32) * q.powu(i as u32);
                        let out = w_tilde_star(&q, &u, &s, &alpha, l, j).unwrap();
                        let su = s.clone() * u.clone();
                        let fac = (Q::one() - su.clone()).div(&(Q::one() - e2.clone() * su)).unwrap();
                        let ds = w_s_star(&q, &(eta.clone() * u.clone()), &(eta.clone() * s.clone()), i, l, k, j).unwrap();
                        assert_eq!(out.weight * fac, ds);
                    }
                }
            }
            let out = w_tilde_star(&q, &u, &s, &r(2, 9), 0, 0).unwrap();
            assert_eq!(out.shift, 0);
        }
    }

    #[test]
    fn tilde_and_hat() {
        let Pt { q, t2, s, .. } = p0_point();
        let s2 = s.powu(2);
        assert_eq!(w_tilde(&q, &t2, &s2, 0, 0, 0).unwrap(), Q::one());
        assert!(w_tilde(&q, &t2, &s2, 3, 2, 2).unwrap().is_zero());
        for i in 0..=5 {
            for l in 0..=i {
                let d = (i - l) as i64;
                assert_eq!(w_tilde(&q, &t2, &s2, i, d, l).unwrap(), w_big(&q, &t2, &s2, i, 2, i + 2 - l, l).unwrap());
            }
        }
        assert_eq!(w_hat(&q, &t2, &s2, 0, 0, 3, 3).unwrap(), Q::one());
        assert!(w_hat(&q, &t2, &s2, 2, 1, 0, 2).unwrap().is_zero());
        for n in 0..=4 {
            for d in 0..=3usize {
                for j in 0..=3 {
                    let direct = w_big(&q, &t2, &s2, n + d, j, j + d, n).unwrap();
                    assert_eq!(w_hat(&q, &t2, &s2, n, d as i64, j, j + d).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn hat_oracle_value() {
        // Direct evaluation of the collapsed display at (N, Δ) = (2, 1), j = 0, k = 1, P0 with t² = 3/11
        // and s² = s_1² = 1/81.
        let (q, t2, s2) = (r(1, 3), r(3, 11), r(1, 81));
        let rr = s2.div(&t2).unwrap();
        let expect = rr.powu(2)
            * (Q::one() - r(1, 27))
            * (Q::one() - rr.clone())
            * (Q::one() - t2.clone())
            * (Q::one() - t2.clone() * q.clone())
            .div(&((Q::one() - q.clone()) * qpoch(&s2, &q, 3)))
            .unwrap();
        assert_eq!(w_hat(&q, &t2, &s2, 2, 1, 0, 1).unwrap(), expect);
    }
}
