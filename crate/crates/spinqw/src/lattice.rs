//! Partition functions of single rows, multi-row grids and fused columns.
//!
//! Row conventions: a row with bottom boundary μ and top boundary λ has
//! vertical labels m_c(μ′) below and m_c(λ′) above column c, and the
//! horizontal edge entering column c from the left carries λ_c − μ_c.

use std::collections::BTreeMap;

use crate::algebra::{qpoch, Algebra, Field};
use crate::error::{Error, Result};
use crate::params::ParamView;
use crate::partitions::{enum_interlacing_above, enum_vertical_strips_above, interlaces, Partition};
use crate::weights::{qbinom, w_big, w_big_star, w_s, w_s_star};

#[derive(Clone, Debug)]
struct Column<K> {
    s: K,
    xi: K,
    s2: K,
    ratio: K,
    s2poch: Vec<K>,
}

/// Per-view column data: s_c, ξ_c and Pochhammer tables for c ≤ width.
#[derive(Clone, Debug)]
pub struct RowCtx<K> {
    view: ParamView<K>,
    qpow: Vec<K>,
    qq: Vec<K>,
    cols: Vec<Column<K>>,
}

impl<K: Field> RowCtx<K> {
    /// Columns 0..=width with Pochhammer tables to length `depth`.
    pub fn new(view: &ParamView<K>, width: usize, depth: usize) -> Result<Self> {
        let q = view.q().clone();
        let qpow: Vec<K> = (0..=depth).map(|m| q.powu(m as u32)).collect();
        let mut qq = vec![K::one()];
        for m in 1..=depth {
            let v = qq[m - 1].clone() * (K::one() - qpow[m].clone());
            qq.push(v);
        }
        let mut cols = Vec::with_capacity(width + 1);
        for c in 0..=width {
            let s = view.s(c)?;
            let xi = view.xi(c)?;
            let s2 = s.powu(2);
            let ratio = s.div(&xi)?;
            let mut s2poch = vec![K::one()];
            for m in 0..depth {
                let v = s2poch[m].clone() * (K::one() - s2.clone() * qpow[m].clone());
                s2poch.push(v);
            }
            cols.push(Column { s, xi, s2, ratio, s2poch });
        }
        Ok(RowCtx { view: view.clone(), qpow, qq, cols })
    }

    /// Context wide and deep enough for rows between partitions inside `lambda`.
    pub fn for_partitions(view: &ParamView<K>, parts: &[&Partition]) -> Result<Self> {
        let width = parts.iter().map(|p| p.len()).max().unwrap_or(0) + 1;
        let depth = parts.iter().map(|p| p.first()).max().unwrap_or(0) + 2;
        Self::new(view, width, depth)
    }

    pub fn view(&self) -> &ParamView<K> {
        &self.view
    }

    pub fn q(&self) -> &K {
        self.view.q()
    }

    fn col(&self, c: usize) -> Result<&Column<K>> {
        self.cols.get(c).ok_or_else(|| {
            Error::Precondition(format!("column {c} beyond row context width {}", self.cols.len() - 1))
        })
    }

    pub fn s(&self, c: usize) -> Result<K> {
        Ok(self.col(c)?.s.clone())
    }

    pub fn xi(&self, c: usize) -> Result<K> {
        Ok(self.col(c)?.xi.clone())
    }

    pub fn qpow(&self, m: usize) -> K {
        match self.qpow.get(m) {
            Some(v) => v.clone(),
            None => self.q().powu(m as u32),
        }
    }

    /// (q;q)_n.
    pub fn qq(&self, n: usize) -> K {
        match self.qq.get(n) {
            Some(v) => v.clone(),
            None => qpoch(self.q(), self.q(), n),
        }
    }

    /// (s_c²;q)_n.
    pub fn s2poch(&self, c: usize, n: usize) -> Result<K> {
        let col = self.col(c)?;
        Ok(match col.s2poch.get(n) {
            Some(v) => v.clone(),
            None => qpoch(&col.s2, self.q(), n),
        })
    }

    /// W^s with (t, s) = (√(s_cξ_c/κ), s_c) in the form polynomial in κ.
    pub fn w_vertex<R: Algebra<K>>(&self, c: usize, kappa: &R, i: usize, j: usize, k: usize, l: usize) -> Result<R> {
        if i + j != k + l || i < l {
            return Ok(R::zero());
        }
        let col = self.col(c)?;
        let mut acc = R::one();
        for m in 0..l {
            acc = acc * (kappa.scale(&col.ratio) - R::from_scalar(col.s2.clone() * self.qpow(m)));
        }
        for m in 0..i - l {
            acc = acc * (R::one() - kappa.scale(&(col.ratio.clone() * self.qpow(m))));
        }
        let den = self.s2poch(c, i)? * self.qq(i - l) * self.qq(l);
        Ok(acc.scale(&self.qq(i).div(&den)?))
    }

    /// (κs_0/ξ_0)^a (κ^{-1}s_0ξ_0;q)_a/(q;q)_a in pole-free form.
    pub fn c_coeff<R: Algebra<K>>(&self, a: usize, kappa: &R) -> Result<R> {
        let col = self.col(0)?;
        let mut acc = R::one();
        for m in 0..a {
            acc = acc * (kappa.scale(&col.ratio) - R::from_scalar(col.s2.clone() * self.qpow(m)));
        }
        Ok(acc.scale(&self.qq(a).inverse()?))
    }
}

fn diff(a: usize, b: usize) -> Option<usize> {
    a.checked_sub(b)
}

/// Horizontal labels λ_c − μ_c for c = 1..=width+1, or None if some is negative.
pub(crate) fn h_labels(top: &Partition, bottom: &Partition, width: usize) -> Option<Vec<usize>> {
    (1..=width + 1).map(|c| diff(top.part(c), bottom.part(c))).collect()
}

/// ⟨λ|𝕋_a(κ)|μ⟩: the W^s row with left label a, bottom μ, top λ.
pub fn zw_row_ctx<K: Field, R: Algebra<K>>(
    ctx: &RowCtx<K>,
    a: usize,
    lambda: &Partition,
    mu: &Partition,
    kappa: &R,
) -> Result<R> {
    if lambda.first() != mu.first() + a || !interlaces(lambda, mu) {
        return Ok(R::zero());
    }
    let width = lambda.len().max(mu.len());
    let Some(h) = h_labels(lambda, mu, width) else { return Ok(R::zero()) };
    let mut acc = R::one();
    for c in 1..=width {
        let w = ctx.w_vertex(c, kappa, mu.col_mult(c), h[c - 1], lambda.col_mult(c), h[c])?;
        if w.is_zero() {
            return Ok(R::zero());
        }
        acc = acc * w;
    }
    Ok(acc)
}

pub fn zw_row<K: Field, R: Algebra<K>>(
    a: usize,
    lambda: &Partition,
    mu: &Partition,
    kappa: &R,
    v: &ParamView<K>,
) -> Result<R> {
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    zw_row_ctx(&ctx, a, lambda, mu, kappa)
}

/// The W^{s*} row without prefactor: bottom λ, top μ, parameters (√(s_cξ_c/κ), s_c).
pub fn wstar_row_ctx<K: Field>(ctx: &RowCtx<K>, mu: &Partition, lambda: &Partition, kappa: &K) -> Result<K> {
    if !interlaces(lambda, mu) {
        return Ok(K::zero());
    }
    let width = lambda.len().max(mu.len());
    let Some(h) = h_labels(lambda, mu, width) else { return Ok(K::zero()) };
    let q = ctx.q();
    let mut acc = K::one();
    for c in 1..=width {
        let col = ctx.col(c)?;
        let t2 = (col.s.clone() * col.xi.clone()).div(kappa)?;
        let w = w_big_star(q, &t2, &col.s2, lambda.col_mult(c), h[c], mu.col_mult(c), h[c - 1])?;
        if w.is_zero() {
            return Ok(K::zero());
        }
        acc = acc * w;
    }
    Ok(acc)
}

/// ⟨μ|T*_a(u)|λ⟩: the w^{s*} row with parameters (uξ_c; s_c).
pub fn tstar_row_ctx<K: Field>(ctx: &RowCtx<K>, a: usize, u: &K, mu: &Partition, lambda: &Partition) -> Result<K> {
    if lambda.first() != mu.first() + a || a > 1 {
        return Ok(K::zero());
    }
    let width = lambda.len().max(mu.len());
    let Some(h) = h_labels(lambda, mu, width) else { return Ok(K::zero()) };
    if h.iter().any(|&x| x > 1) {
        return Ok(K::zero());
    }
    let q = ctx.q();
    let mut acc = K::one();
    for c in 1..=width {
        let col = ctx.col(c)?;
        let ux = u.clone() * col.xi.clone();
        let w = w_s_star(q, &ux, &col.s, lambda.col_mult(c), h[c], mu.col_mult(c), h[c - 1])?;
        if w.is_zero() {
            return Ok(K::zero());
        }
        acc = acc * w;
    }
    Ok(acc)
}

/// The w^s row with parameters (uξ_c; s_c), left label a, bottom μ, top λ.
pub fn w_row_ctx<K: Field>(ctx: &RowCtx<K>, a: usize, u: &K, lambda: &Partition, mu: &Partition) -> Result<K> {
    if lambda.first() != mu.first() + a || a > 1 {
        return Ok(K::zero());
    }
    let width = lambda.len().max(mu.len());
    let Some(h) = h_labels(lambda, mu, width) else { return Ok(K::zero()) };
    if h.iter().any(|&x| x > 1) {
        return Ok(K::zero());
    }
    let q = ctx.q();
    let mut acc = K::one();
    for c in 1..=width {
        let col = ctx.col(c)?;
        let ux = u.clone() * col.xi.clone();
        let w = w_s(q, &ux, &col.s, mu.col_mult(c), h[c - 1], lambda.col_mult(c), h[c])?;
        if w.is_zero() {
            return Ok(K::zero());
        }
        acc = acc * w;
    }
    Ok(acc)
}

/// Vertex family of a brute-force row.
#[derive(Clone, Debug)]
pub enum RowFamily<K> {
    /// W^s with (√(s_cξ_c/κ), s_c), rightward.
    Q(K),
    /// W^{s*} with (√(s_cξ_c/κ), s_c), leftward.
    QDual(K),
    /// w^s with (uξ_c; s_c), rightward.
    Spin(K),
    /// w^{s*} with (uξ_c; s_c), leftward.
    SpinDual(K),
}

/// A single row: family, label on the left end, and the two boundary partitions.
#[derive(Clone, Debug)]
pub struct RowSpec<K> {
    pub family: RowFamily<K>,
    pub left: usize,
    pub top: Partition,
    pub bottom: Partition,
}

/// Sums the row weight over every horizontal labelling with labels ≤ cap.
pub fn brute_force_row<K: Field>(spec: &RowSpec<K>, v: &ParamView<K>, cap: usize) -> Result<K> {
    let width = spec.top.len().max(spec.bottom.len()) + 1;
    let thin = matches!(spec.family, RowFamily::Spin(_) | RowFamily::SpinDual(_));
    let cap = if thin { cap.min(1) } else { cap };
    if spec.left > cap {
        return Ok(K::zero());
    }
    let q = v.q();
    let vertex = |c: usize, hl: usize, hr: usize| -> Result<K> {
        let (s, xi) = (v.s(c)?, v.xi(c)?);
        let (i, k) = (spec.bottom.col_mult(c), spec.top.col_mult(c));
        match &spec.family {
            RowFamily::Q(kappa) => {
                let t2 = (s.clone() * xi).div(kappa)?;
                w_big(q, &t2, &s.powu(2), i, hl, k, hr)
            }
            RowFamily::QDual(kappa) => {
                let t2 = (s.clone() * xi).div(kappa)?;
                w_big_star(q, &t2, &s.powu(2), i, hr, k, hl)
            }
            RowFamily::Spin(u) => w_s(q, &(u.clone() * xi), &s, i, hl, k, hr),
            RowFamily::SpinDual(u) => w_s_star(q, &(u.clone() * xi), &s, i, hr, k, hl),
        }
    };
    // h[0] is the left label, h[width] = 0 the right one; the rest run over 0..=cap.
    let mut h = vec![0usize; width + 1];
    h[0] = spec.left;
    let mut total = K::zero();
    loop {
        let mut w = K::one();
        for c in 1..=width {
            w = w * vertex(c, h[c - 1], h[c])?;
            if w.is_zero() {
                break;
            }
        }
        total = total + w;
        let mut idx = 1;
        loop {
            if idx >= width {
                return Ok(total);
            }
            if h[idx] < cap {
                h[idx] += 1;
                break;
            }
            h[idx] = 0;
            idx += 1;
        }
    }
}

/// ZW^{(a_1..a_n)}_{λ/μ}: row i (top to bottom) uses the view τ^i_S Ξ, τ^i_Ξ S.
pub fn zw_grid<K: Field, R: Algebra<K>>(
    a: &[usize],
    lambda: &Partition,
    mu: &Partition,
    kappa: &[R],
    v: &ParamView<K>,
) -> Result<R> {
    if a.len() != kappa.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: kappa.len() });
    }
    if a.iter().sum::<usize>() + mu.first() != lambda.first() || !lambda.contains(mu) {
        return Ok(R::zero());
    }
    let n = a.len();
    let mut states: BTreeMap<Partition, R> = BTreeMap::new();
    states.insert(mu.clone(), R::one());
    for i in (1..=n).rev() {
        let ctx = RowCtx::for_partitions(&v.mixed(i), &[lambda, mu])?;
        let mut next: BTreeMap<Partition, R> = BTreeMap::new();
        for (rho, val) in &states {
            let first = rho.first() + a[i - 1];
            for nu in enum_interlacing_above(rho, first) {
                if nu.first() != first || !lambda.contains(&nu) {
                    continue;
                }
                let w = zw_row_ctx(&ctx, a[i - 1], &nu, rho, &kappa[i - 1])?;
                if w.is_zero() {
                    continue;
                }
                let term = val.clone() * w;
                let slot = next.entry(nu).or_insert_with(R::zero);
                *slot = slot.clone() + term;
            }
        }
        states = next;
    }
    Ok(states.remove(lambda).unwrap_or_else(R::zero))
}

/// Zw^{(a_1..a_n)}_{λ/μ}: every row uses (u_iξ_c; s_c) on the same view.
pub fn zw_small_grid<K: Field>(
    a: &[usize],
    lambda: &Partition,
    mu: &Partition,
    u: &[K],
    v: &ParamView<K>,
) -> Result<K> {
    if a.len() != u.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: u.len() });
    }
    if a.iter().any(|&x| x > 1) {
        return Err(Error::Precondition("Zw left labels must be thin".into()));
    }
    if a.iter().sum::<usize>() + mu.first() != lambda.first() || !lambda.contains(mu) {
        return Ok(K::zero());
    }
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    let mut states: BTreeMap<Partition, K> = BTreeMap::new();
    states.insert(mu.clone(), K::one());
    for i in (1..=a.len()).rev() {
        let mut next: BTreeMap<Partition, K> = BTreeMap::new();
        for (rho, val) in &states {
            let first = rho.first() + a[i - 1];
            for nu in enum_vertical_strips_above(rho, lambda.len()) {
                if nu.first() != first || !lambda.contains(&nu) {
                    continue;
                }
                let w = w_row_ctx(&ctx, a[i - 1], &u[i - 1], &nu, rho)?;
                if w.is_zero() {
                    continue;
                }
                let slot = next.entry(nu).or_insert_with(K::zero);
                *slot = slot.clone() + val.clone() * w;
            }
        }
        states = next;
    }
    Ok(states.remove(lambda).unwrap_or_else(K::zero))
}

/// Z_j(J) = q^{j(j−1)/2} (q;q)_J/((q;q)_j (q;q)_{J−j}).
pub fn z_norm<K: Field>(q: &K, fuse: usize, j: usize) -> Result<K> {
    if j > fuse {
        return Ok(K::zero());
    }
    Ok(q.powu((j * j.saturating_sub(1) / 2) as u32) * qbinom(q, fuse, j)?)
}

fn check_b(fuse: usize, b: &[usize]) -> Result<()> {
    if b.len() != fuse || b.iter().any(|&x| x > 1) {
        return Err(Error::Precondition(format!("b must be a 0/1 vector of length {fuse}")));
    }
    Ok(())
}

fn thin_vectors(len: usize, total: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1u32 << len))
        .filter(move |m| m.count_ones() as usize == total)
        .map(move |m| (0..len).map(|r| ((m >> r) & 1) as usize).collect())
}

fn graded_power<K: Field>(q: &K, v: &[usize]) -> K {
    let e: usize = v.iter().enumerate().map(|(r, x)| r * x).sum();
    q.powu(e as u32)
}

/// Right side of the J-column fusion formula with right labels `b` (Σb = l).
#[allow(clippy::too_many_arguments)]
pub fn stack_columns_fused<K: Field>(
    q: &K,
    fuse: usize,
    u: &K,
    s: &K,
    i: usize,
    j: usize,
    k: usize,
    b: &[usize],
) -> Result<K> {
    check_b(fuse, b)?;
    let l: usize = b.iter().sum();
    if j > fuse {
        return Err(Error::Precondition(format!("left label {j} exceeds J = {fuse}")));
    }
    let mut sum = K::zero();
    for a in thin_vectors(fuse, j) {
        let mut g = i;
        let mut w = graded_power(q, &a);
        for r in 0..fuse {
            let Some(next) = (g + a[r]).checked_sub(b[r]) else {
                w = K::zero();
                break;
            };
            w = w * w_s(q, &(u.clone() * q.powu(r as u32)), s, g, a[r], next, b[r])?;
            g = next;
        }
        if g == k {
            sum = sum + w;
        }
    }
    let pre = z_norm(q, fuse, l)?.div(&z_norm(q, fuse, j)?)? * graded_power(q, b).inverse()?;
    Ok(pre * sum)
}

/// The dual J-column, rescaled so that it equals W^{s*} at t² = q^{−J}.
///
/// Vertices run bottom to top for r = J..1 with w^{s*}_{sq^{r−1};s}; `b`
/// holds the right labels (Σb = l) and the left labels sum to j.
#[allow(clippy::too_many_arguments)]
pub fn stack_columns_dual_fused<K: Field>(
    q: &K,
    fuse: usize,
    s: &K,
    i: usize,
    k: usize,
    j: usize,
    b: &[usize],
) -> Result<K> {
    check_b(fuse, b)?;
    let l: usize = b.iter().sum();
    let mut sum = K::zero();
    for a in thin_vectors(fuse, j) {
        let mut g = i;
        let mut w = graded_power(q, &a);
        for r in (0..fuse).rev() {
            let Some(next) = (g + b[r]).checked_sub(a[r]) else {
                w = K::zero();
                break;
            };
            w = w * w_s_star(q, &(s.clone() * q.powu(r as u32)), s, g, b[r], next, a[r])?;
            g = next;
        }
        if g == k {
            sum = sum + w;
        }
    }
    let sign = if (l + j) % 2 == 0 { K::one() } else { -K::one() };
    let scale = sign * q.powu((i * fuse) as u32) * graded_power(q, b);
    sum.div(&scale)
}
