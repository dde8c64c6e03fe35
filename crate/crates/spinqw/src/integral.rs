//! Contour-integral representation of F_μ and the orthogonality integral of F̃.
//!
//! Integrals over a centered circle use the trapezoidal rule: with
//! z = ρe^{iθ}, dz/(2πiz) = dθ/2π, so each circle integral is a mean over nodes.

use std::f64::consts::PI;

use crate::algebra::{qpoch, Field, Ring, C64};
use crate::error::{Error, Result};
use crate::params::ParamView;
use crate::partitions::Partition;
use crate::rowops::c_norm;

/// A circle |z| = radius with `nodes` trapezoid nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour {
    pub radius: f64,
    pub nodes: usize,
    /// max |s_i/ξ_i| over i ≥ 1.
    pub inner: f64,
    /// min |1/(s_iξ_i)| over i ≥ 1.
    pub outer: f64,
    pub margin: f64,
}

/// Circle between the points s_i/ξ_i and 1/(s_iξ_i), i = 1..=horizon.
pub fn build_contour(v: &ParamView<C64>, nodes: usize, margin: f64) -> Result<Contour> {
    if v.q().norm() >= 1.0 {
        return Err(Error::Contour(format!("|q| = {} is not below 1", v.q().norm())));
    }
    let top = v.horizon().saturating_sub(v.offset() + v.shift());
    let mut inner = 0.0f64;
    let mut outer = f64::INFINITY;
    for i in 1..=top {
        let (s, xi) = (v.s(i)?, v.xi(i)?);
        inner = inner.max((s / xi).norm());
        outer = outer.min(1.0 / (s * xi).norm());
    }
    if !(inner * (1.0 + margin) < outer / (1.0 + margin)) {
        return Err(Error::Contour(format!("no circle separates {inner} from {outer} with margin {margin}")));
    }
    Ok(Contour { radius: (inner * outer).sqrt(), nodes, inner, outer, margin })
}

impl Contour {
    pub fn with_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius > self.inner && radius < self.outer) {
            return Err(Error::Contour(format!("radius {radius} outside ({}, {})", self.inner, self.outer)));
        }
        self.radius = radius;
        Ok(self)
    }

    /// Nodes ρe^{2πi(m + phase)/M}.
    pub fn points(&self, phase: f64) -> Vec<C64> {
        (0..self.nodes)
            .map(|m| C64::from_polar(self.radius, 2.0 * PI * (m as f64 + phase) / self.nodes as f64))
            .collect()
    }
}

fn checked(x: C64) -> Result<C64> {
    if x.norm() < 1e-13 || !x.is_finite() {
        return Err(Error::Pole("quadrature node on a pole".into()));
    }
    Ok(x)
}

/// Mean over the k-fold node grid of ∏_{α<β} pair(α,β) ∏_α single(α).
fn grid_mean(single: &[Vec<C64>], pair: &dyn Fn(usize, usize, usize, usize) -> C64) -> C64 {
    let k = single.len();
    if k == 0 {
        return C64::one();
    }
    let m = single[0].len();
    let mut idx = vec![0usize; k];
    let mut total = C64::zero();
    loop {
        let mut term = C64::one();
        for a in 0..k {
            term *= single[a][idx[a]];
            for b in a + 1..k {
                term *= pair(a, b, idx[a], idx[b]);
            }
        }
        total += term;
        let mut pos = 0;
        loop {
            if pos == k {
                return total / (m as f64).powi(k as i32);
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn integral_on(mu: &Partition, kappa: &[C64], v: &ParamView<C64>, c: &Contour) -> Result<C64> {
    let k = mu.first();
    let conj = mu.conjugate();
    let q = *v.q();
    let z = c.points(0.0);
    let xi0_inv = v.xi(0)?.inverse()?;
    let mut single = Vec::with_capacity(k);
    for a in 1..=k {
        let r = conj.part(a);
        let (sr, xr) = (v.s(r)?, v.xi(r)?);
        let mut col = Vec::with_capacity(z.len());
        for &za in &z {
            let mut f = xi0_inv / checked(za - sr / xr)?;
            for j in 1..r {
                let (s, x) = (v.s(j)?, v.xi(j)?);
                f *= (C64::one() - s * x * za) / checked(za * x - s)?;
            }
            for (i, ki) in kappa.iter().enumerate() {
                let (s, x) = (v.s(i + 1)?, v.xi(i + 1)?);
                f *= (C64::one() - za * ki) / checked(C64::one() - za * x * s)?;
            }
            col.push(f);
        }
        single.push(col);
    }
    let m = z.len();
    let mut table = vec![C64::zero(); m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = (z[i] - z[j]) / checked(z[i] - q * z[j])?;
        }
    }
    let pair = |_: usize, _: usize, i: usize, j: usize| table[i * m + j];
    Ok(grid_mean(&single, &pair))
}

/// k-fold trapezoidal value of the integral representation of F_μ(κ), k = μ_1.
pub fn integral_f(mu: &Partition, kappa: &[C64], v: &ParamView<C64>, contour: &Contour) -> Result<C64> {
    match integral_on(mu, kappa, v, contour) {
        Err(Error::Pole(_)) => {
            let nudged = contour.with_radius(contour.radius * 1.001)?;
            integral_on(mu, kappa, v, &nudged)
        }
        r => r,
    }
}

/// φ̃_k(u) on the view, numerically.
fn phi_tilde_num(k: usize, u: C64, v: &ParamView<C64>) -> Result<C64> {
    crate::functions::phi_tilde(k, &u, v)
}

/// (q;q)_{L−l(μ)} c_S(λ′)/(1−q)^L ∮…∮ ∏_{α<β}(z_α−z_β)/(z_α−qz_β) F̃_λ(z) ∏_α z_α^{-1}φ̃_{μ_α}(z_α^{-1}|Ξ̄,S) dz/(2πi).
///
/// `v` is (Ξ, S) and `vbar` is (Ξ̄, S). Each variable gets its own node phase
/// so that no two variables share a node.
pub fn orthogonality_integral(
    lambda: &Partition,
    mu: &Partition,
    l: usize,
    v: &ParamView<C64>,
    vbar: &ParamView<C64>,
    contour: &Contour,
) -> Result<C64> {
    if mu.len() > l || lambda.len() > l {
        return Err(Error::Precondition(format!("partitions longer than L = {l}")));
    }
    let q = *v.q();
    let pts: Vec<Vec<C64>> = (0..l).map(|a| contour.points(a as f64 / (l as f64 + 1.0))).collect();
    // F̃_λ symmetrization needs φ̃_{λ_i}(z_α) for every α, i; the dual factor needs φ̃_{μ_α}(1/z_α | Ξ̄).
    let mut phi_l = Vec::with_capacity(l);
    let mut dual = Vec::with_capacity(l);
    for (a, za) in pts.iter().enumerate() {
        let mut rows = Vec::with_capacity(za.len());
        let mut d = Vec::with_capacity(za.len());
        for &z in za {
            let row: Vec<C64> = (1..=l).map(|i| phi_tilde_num(lambda.part(i), z, v)).collect::<Result<_>>()?;
            rows.push(row);
            d.push(phi_tilde_num(mu.part(a + 1), z.inverse()?, vbar)?);
        }
        phi_l.push(rows);
        dual.push(d);
    }
    let perms: Vec<Vec<usize>> = {
        use itertools::Itertools;
        (0..l).permutations(l).collect()
    };
    let m = contour.nodes;
    let mut idx = vec![0usize; l];
    let mut total = C64::zero();
    if l == 0 {
        total = C64::one();
    } else {
        loop {
            let z: Vec<C64> = (0..l).map(|a| pts[a][idx[a]]).collect();
            let mut vand = C64::one();
            for a in 0..l {
                for b in a + 1..l {
                    vand *= (z[a] - z[b]) / checked(z[a] - q * z[b])?;
                }
            }
            let mut sym = C64::zero();
            for p in &perms {
                let mut t = C64::one();
                for a in 0..l {
                    for b in a + 1..l {
                        t *= (z[p[a]] - q * z[p[b]]) / checked(z[p[a]] - z[p[b]])?;
                    }
                    t *= phi_l[p[a]][idx[p[a]]][a];
                }
                sym += t;
            }
            let mut d = C64::one();
            for a in 0..l {
                d *= dual[a][idx[a]];
            }
            total += vand * sym * d;
            let mut pos = 0;
            loop {
                if pos == l {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < m {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == l {
                break;
            }
        }
        total /= (m as f64).powi(l as i32);
    }
    // dz/(2πi) = z dθ/2π cancels the explicit ∏ z_α^{-1}.
    let sym_norm = qpoch(&q, &q, l - lambda.len());
    let pre = qpoch(&q, &q, l - mu.len()) * c_norm(&lambda.conjugate(), v)?
        / ((C64::one() - q).powu(l as u32) * sym_norm);
    Ok(pre * total)
}
