//! Row operators acting on finitely supported vectors indexed by partitions.
//!
//! C(κ) and 𝕋_a(κ) raise partitions along interlacing, 𝔹*(κ), T*_a(u) and
//! B̃*(u) lower them. Raising operators need a bounding box; lowering ones
//! never leave the box of their input.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Algebra, Field};
use crate::error::{Error, Result};
use crate::lattice::{h_labels, tstar_row_ctx, wstar_row_ctx, zw_row_ctx, RowCtx};
use crate::weights::w_s_star;
use crate::params::ParamView;
use crate::partitions::{enum_interlacing_above, enum_interlacing_below, enum_vertical_strips_below, Partition};

/// Sparse vector over partitions.
pub type State<R> = BTreeMap<Partition, R>;

/// Partitions with at most `rows` parts, each at most `cols`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartBox {
    pub rows: usize,
    pub cols: usize,
}

impl PartBox {
    pub fn new(rows: usize, cols: usize) -> Self {
        PartBox { rows, cols }
    }

    pub fn holds(&self, p: &Partition) -> bool {
        p.len() <= self.rows && p.first() <= self.cols
    }

    fn check(&self, p: &Partition) -> Result<()> {
        if self.holds(p) {
            Ok(())
        } else {
            Err(Error::BoxOverflow(format!("{p} outside {}x{} box", self.rows, self.cols)))
        }
    }
}

/// The basis vector |λ⟩.
pub fn basis<R: crate::algebra::Ring>(p: &Partition) -> State<R> {
    let mut s = State::new();
    s.insert(p.clone(), R::one());
    s
}

fn add_to<R: crate::algebra::Ring>(state: &mut State<R>, key: Partition, val: R) {
    if val.is_zero() {
        return;
    }
    match state.get_mut(&key) {
        Some(slot) => {
            let v = slot.clone() + val;
            if v.is_zero() {
                state.remove(&key);
            } else {
                *slot = v;
            }
        }
        None => {
            state.insert(key, val);
        }
    }
}

/// ⟨λ|𝕋_a(κ)|μ⟩ on the view `v`.
pub fn op_t_elem<K: Field, R: Algebra<K>>(a: usize, lambda: &Partition, mu: &Partition, kappa: &R, v: &ParamView<K>) -> Result<R> {
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    zw_row_ctx(&ctx, a, lambda, mu, kappa)
}

/// ⟨λ|C(κ)|μ⟩ = c_a(κ)⟨λ|𝕋_a(κ)|μ⟩ with a = λ_1 − μ_1.
pub fn op_c_elem<K: Field, R: Algebra<K>>(lambda: &Partition, mu: &Partition, kappa: &R, v: &ParamView<K>) -> Result<R> {
    let Some(a) = lambda.first().checked_sub(mu.first()) else { return Ok(R::zero()) };
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    Ok(ctx.c_coeff(a, kappa)? * zw_row_ctx(&ctx, a, lambda, mu, kappa)?)
}

/// ⟨μ|T*_a(u)|λ⟩ on the view `v`.
pub fn op_tstar_elem<K: Field>(a: usize, mu: &Partition, lambda: &Partition, u: &K, v: &ParamView<K>) -> Result<K> {
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    tstar_row_ctx(&ctx, a, u, mu, lambda)
}

fn bstar_with_ctx<K: Field>(ctx: &RowCtx<K>, mu: &Partition, lambda: &Partition, kappa: &K) -> Result<K> {
    let row = wstar_row_ctx(ctx, mu, lambda, kappa)?;
    if row.is_zero() {
        return Ok(row);
    }
    let base = kappa.div(&(ctx.s(0)? * ctx.xi(0)?))?;
    Ok(base.powu(lambda.first() as u32) * row)
}

/// ⟨μ|𝔹*(κ)|λ⟩ = (κ/(s_0ξ_0))^{λ_1} times the W^{s*} row.
pub fn op_bstar_elem<K: Field>(mu: &Partition, lambda: &Partition, kappa: &K, v: &ParamView<K>) -> Result<K> {
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    bstar_with_ctx(&ctx, mu, lambda, kappa)
}

fn btilde_with_ctx<K: Field>(ctx: &RowCtx<K>, mu: &Partition, lambda: &Partition, u: &K) -> Result<K> {
    let Some(a) = lambda.first().checked_sub(mu.first()) else { return Ok(K::zero()) };
    if a > 1 {
        return Ok(K::zero());
    }
    let t = tstar_row_ctx(ctx, a, u, mu, lambda)?;
    if a == 0 {
        return Ok(t);
    }
    let coef = -(u.clone() * ctx.xi(0)?).div(&ctx.s(0)?)?;
    Ok(coef * t)
}

/// ⟨μ|B̃*(u)|λ⟩ = Σ_a (−uξ_0/s_0)^a ⟨μ|T*_a(u)|λ⟩.
pub fn op_btilde_elem<K: Field>(mu: &Partition, lambda: &Partition, u: &K, v: &ParamView<K>) -> Result<K> {
    let ctx = RowCtx::for_partitions(v, &[lambda, mu])?;
    btilde_with_ctx(&ctx, mu, lambda, u)
}

fn raise<K: Field, R: Algebra<K>>(
    state: &State<R>,
    v: &ParamView<K>,
    bx: PartBox,
    mut elem: impl FnMut(&RowCtx<K>, &Partition, &Partition) -> Result<R>,
) -> Result<State<R>> {
    let ctx = RowCtx::new(v, bx.rows + 1, bx.cols + 2)?;
    let mut out = State::new();
    for (mu, val) in state {
        bx.check(mu)?;
        for lam in enum_interlacing_above(mu, bx.cols) {
            if lam.len() > bx.rows {
                continue;
            }
            let w = elem(&ctx, &lam, mu)?;
            if !w.is_zero() {
                add_to(&mut out, lam, val.clone() * w);
            }
        }
    }
    Ok(out)
}

/// C(κ) applied to a state; results outside `bx` are dropped.
pub fn apply_c<K: Field, R: Algebra<K>>(state: &State<R>, kappa: &R, v: &ParamView<K>, bx: PartBox) -> Result<State<R>> {
    raise(state, v, bx, |ctx, lam, mu| {
        let a = lam.first() - mu.first();
        let z = zw_row_ctx(ctx, a, lam, mu, kappa)?;
        if z.is_zero() {
            return Ok(z);
        }
        Ok(ctx.c_coeff(a, kappa)? * z)
    })
}

/// 𝕋_a(κ) applied to a state.
pub fn apply_t<K: Field, R: Algebra<K>>(state: &State<R>, a: usize, kappa: &R, v: &ParamView<K>, bx: PartBox) -> Result<State<R>> {
    raise(state, v, bx, |ctx, lam, mu| {
        if lam.first() != mu.first() + a {
            return Ok(R::zero());
        }
        zw_row_ctx(ctx, a, lam, mu, kappa)
    })
}

fn width_of<R>(state: &State<R>) -> (usize, usize) {
    let rows = state.keys().map(|p| p.len()).max().unwrap_or(0);
    let cols = state.keys().map(|p| p.first()).max().unwrap_or(0);
    (rows, cols)
}

fn lower<K: Field>(
    state: &State<K>,
    v: &ParamView<K>,
    strips: bool,
    mut elem: impl FnMut(&RowCtx<K>, &Partition, &Partition) -> Result<K>,
) -> Result<State<K>> {
    let (rows, cols) = width_of(state);
    let ctx = RowCtx::new(v, rows + 1, cols + 2)?;
    let mut out = State::new();
    for (lam, val) in state {
        let below = if strips { enum_vertical_strips_below(lam) } else { enum_interlacing_below(lam) };
        for mu in below {
            let w = elem(&ctx, &mu, lam)?;
            if !w.is_zero() {
                add_to(&mut out, mu, val.clone() * w);
            }
        }
    }
    Ok(out)
}

/// 𝔹*(κ) applied to a state (row vector convention: output indexed by μ).
pub fn apply_bstar<K: Field>(state: &State<K>, kappa: &K, v: &ParamView<K>) -> Result<State<K>> {
    lower(state, v, false, |ctx, mu, lam| bstar_with_ctx(ctx, mu, lam, kappa))
}

/// T*_a(u) applied to a state.
pub fn apply_tstar<K: Field>(state: &State<K>, a: usize, u: &K, v: &ParamView<K>) -> Result<State<K>> {
    lower(state, v, true, |ctx, mu, lam| tstar_row_ctx(ctx, a, u, mu, lam))
}

/// B̃*(u) applied to a state.
pub fn apply_btilde<K: Field>(state: &State<K>, u: &K, v: &ParamView<K>) -> Result<State<K>> {
    lower(state, v, true, |ctx, mu, lam| btilde_with_ctx(ctx, mu, lam, u))
}

enum CachedKind<K> {
    C { kappa: K, coeff: Vec<K> },
    BTilde { u: K, lead: K },
}

/// C(κ) or B̃*(u) at a fixed scalar argument, with vertex weights cached by
/// column and labels. Rows are produced one source partition at a time.
pub struct CachedOp<K: Field> {
    ctx: RowCtx<K>,
    bx: PartBox,
    kind: CachedKind<K>,
    vertex: HashMap<(usize, [usize; 4]), K>,
}

impl<K: Field> CachedOp<K> {
    /// C(κ) raising inside `bx`.
    pub fn c(kappa: &K, v: &ParamView<K>, bx: PartBox) -> Result<Self> {
        let ctx = RowCtx::new(v, bx.rows + 1, bx.cols + 2)?;
        let coeff = (0..=bx.cols).map(|a| ctx.c_coeff(a, kappa)).collect::<Result<_>>()?;
        Ok(CachedOp { ctx, bx, kind: CachedKind::C { kappa: kappa.clone(), coeff }, vertex: HashMap::new() })
    }

    /// B̃*(u) on partitions inside `bx`.
    pub fn btilde(u: &K, v: &ParamView<K>, bx: PartBox) -> Result<Self> {
        let ctx = RowCtx::new(v, bx.rows + 1, bx.cols + 2)?;
        let lead = -(u.clone() * ctx.xi(0)?).div(&ctx.s(0)?)?;
        Ok(CachedOp { ctx, bx, kind: CachedKind::BTilde { u: u.clone(), lead }, vertex: HashMap::new() })
    }

    fn weight(&mut self, c: usize, labels: [usize; 4]) -> Result<K> {
        if let Some(w) = self.vertex.get(&(c, labels)) {
            return Ok(w.clone());
        }
        let [a, b, d, e] = labels;
        let w = match &self.kind {
            CachedKind::C { kappa, .. } => self.ctx.w_vertex(c, kappa, a, b, d, e)?,
            CachedKind::BTilde { u, .. } => {
                let ux = u.clone() * self.ctx.xi(c)?;
                w_s_star(self.ctx.q(), &ux, &self.ctx.s(c)?, a, b, d, e)?
            }
        };
        self.vertex.insert((c, labels), w.clone());
        Ok(w)
    }

    /// Product of the row's vertex weights, with (top, bottom) the larger and smaller partition.
    fn row_weight(&mut self, top: &Partition, bottom: &Partition) -> Result<K> {
        let width = top.len().max(bottom.len());
        let Some(h) = h_labels(top, bottom, width) else { return Ok(K::zero()) };
        let raising = matches!(self.kind, CachedKind::C { .. });
        if !raising && h.iter().any(|&x| x > 1) {
            return Ok(K::zero());
        }
        let mut acc = K::one();
        for c in 1..=width {
            let (mb, mt) = (bottom.col_mult(c), top.col_mult(c));
            let labels = if raising { [mb, h[c - 1], mt, h[c]] } else { [mt, h[c], mb, h[c - 1]] };
            let w = self.weight(c, labels)?;
            if w.is_zero() {
                return Ok(K::zero());
            }
            acc = acc * w;
        }
        Ok(acc)
    }

    /// The image of |p⟩.
    pub fn row(&mut self, p: &Partition) -> Result<State<K>> {
        self.bx.check(p)?;
        let mut out = State::new();
        if let CachedKind::C { .. } = self.kind {
            for lam in enum_interlacing_above(p, self.bx.cols) {
                if lam.len() > self.bx.rows {
                    continue;
                }
                let w = self.row_weight(&lam, p)?;
                if w.is_zero() {
                    continue;
                }
                let CachedKind::C { coeff, .. } = &self.kind else { unreachable!() };
                add_to(&mut out, lam.clone(), coeff[lam.first() - p.first()].clone() * w);
            }
        } else {
            for mu in enum_vertical_strips_below(p) {
                let a = p.first() - mu.first();
                if a > 1 {
                    continue;
                }
                let w = self.row_weight(p, &mu)?;
                let CachedKind::BTilde { lead, .. } = &self.kind else { unreachable!() };
                let w = if a == 1 { lead.clone() * w } else { w };
                add_to(&mut out, mu, w);
            }
        }
        Ok(out)
    }
}

/// c_S(λ) = ∏_{i≥1} (s_i²;q)_{m_i}/(q;q)_{m_i} with m_i = λ_i − λ_{i+1}.
pub fn c_norm<K: Field>(lambda: &Partition, v: &ParamView<K>) -> Result<K> {
    let ctx = RowCtx::for_partitions(v, &[lambda])?;
    let mut acc = K::one();
    for i in 1..=lambda.len() {
        let m = lambda.col_mult(i);
        acc = acc * ctx.s2poch(i, m)?.div(&ctx.qq(m))?;
    }
    Ok(acc)
}

/// (−S)^λ = ∏_i (−s_{i−1})^{λ_i}.
pub fn neg_s_power<K: Field>(lambda: &Partition, v: &ParamView<K>) -> Result<K> {
    let mut acc = K::one();
    for (i, &p) in lambda.parts().iter().enumerate() {
        acc = acc * (-v.s(i)?).powu(p as u32);
    }
    Ok(acc)
}

/// (S)^{2λ} = ∏_i s_{i−1}^{2λ_i}.
pub fn s2_power<K: Field>(lambda: &Partition, v: &ParamView<K>) -> Result<K> {
    let mut acc = K::one();
    for (i, &p) in lambda.parts().iter().enumerate() {
        acc = acc * v.s(i)?.powu(2 * p as u32);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{poly_eval, MultiPoly, Ring, Q};
    use crate::lattice::{brute_force_row, RowFamily, RowSpec};
    use crate::params::ParameterBase;
    use crate::partitions::enum_box;
    use crate::random::{random_base, Sampler};

    fn r(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    #[test]
    fn cached_rows_match_applied_operators() {
        let mut smp = Sampler::new(21);
        let v = random_base(&mut smp, 12).view().mixed(1);
        let bx = PartBox::new(4, 4);
        let (kappa, u) = (r(2, 7), r(-3, 5));
        let mut c = CachedOp::c(&kappa, &v, bx).unwrap();
        let mut b = CachedOp::btilde(&u, &v, bx).unwrap();
        for p in enum_box(4, 4) {
            assert_eq!(c.row(&p).unwrap(), apply_c(&basis(&p), &kappa, &v, bx).unwrap(), "C on {p}");
            assert_eq!(b.row(&p).unwrap(), apply_btilde(&basis(&p), &u, &v).unwrap(), "B~ on {p}");
        }
        assert!(c.row(&"5".parse().unwrap()).is_err());
    }

    #[test]
    fn bstar_is_adjoint_of_c() {
        let mut smp = Sampler::new(5);
        for trial in 0..3 {
            let base = if trial == 0 { ParameterBase::p0() } else { random_base(&mut smp, 12) };
            let v = base.view();
            let tau = v.mixed(1);
            let kappa = smp.rational();
            for lam in enum_box(3, 3) {
                for mu in enum_interlacing_below(&lam) {
                    let c = op_c_elem(&lam, &mu, &kappa, &tau).unwrap();
                    let b = op_bstar_elem(&mu, &lam, &kappa, &v).unwrap();
                    let f = s2_power(&mu, &tau).unwrap() * c_norm(&mu, &tau).unwrap()
                        / (s2_power(&lam, &v).unwrap() * c_norm(&lam, &v).unwrap());
                    assert_eq!(b, f * c, "{lam} {mu}");
                }
            }
        }
    }

    #[test]
    fn bstar_support_is_interlacing() {
        let v = ParameterBase::p0().view();
        for lam in enum_box(3, 3) {
            for mu in enum_box(3, 3) {
                let b = op_bstar_elem(&mu, &lam, &r(2, 3), &v).unwrap();
                if !b.is_zero() {
                    assert!(crate::partitions::interlaces(&lam, &mu));
                }
            }
        }
    }

    #[test]
    fn btilde_support_is_vertical_strip() {
        let v = ParameterBase::p0().view();
        let el = op_btilde_elem(&Partition::empty(), &Partition::from_parts(&[1, 1]), &r(1, 3), &v).unwrap();
        assert!(!el.is_zero());
        for lam in enum_box(3, 3) {
            for mu in enum_box(3, 3) {
                let b = op_btilde_elem(&mu, &lam, &r(1, 3), &v).unwrap();
                if !b.is_zero() {
                    assert!(crate::partitions::is_vertical_strip(&lam, &mu));
                }
            }
        }
    }

    #[test]
    fn applied_operators_match_elements() {
        let v = ParameterBase::p0().view();
        let bx = PartBox::new(3, 4);
        let mu = Partition::from_parts(&[2, 1]);
        let kappa = r(3, 7);
        let out = apply_c(&basis::<Q>(&mu), &kappa, &v, bx).unwrap();
        for lam in enum_box(3, 4) {
            let e = op_c_elem(&lam, &mu, &kappa, &v).unwrap();
            assert_eq!(out.get(&lam).cloned().unwrap_or_else(Q::zero), e);
        }
        let lam = Partition::from_parts(&[3, 2, 1]);
        let out = apply_btilde(&basis::<Q>(&lam), &kappa, &v).unwrap();
        for mu in enum_box(3, 3) {
            let e = op_btilde_elem(&mu, &lam, &kappa, &v).unwrap();
            assert_eq!(out.get(&mu).cloned().unwrap_or_else(Q::zero), e);
        }
        let out = apply_tstar(&basis::<Q>(&lam), 1, &kappa, &v).unwrap();
        for mu in enum_box(3, 3) {
            let spec = RowSpec { family: RowFamily::SpinDual(kappa.clone()), left: 1, top: mu.clone(), bottom: lam.clone() };
            assert_eq!(out.get(&mu).cloned().unwrap_or_else(Q::zero), brute_force_row(&spec, &v, 1).unwrap());
        }
    }

    #[test]
    fn raising_outside_box_is_an_error() {
        let v = ParameterBase::p0().view();
        let big = Partition::from_parts(&[5]);
        let r = apply_c(&basis::<Q>(&big), &r(1, 2), &v, PartBox::new(2, 3));
        assert!(matches!(r, Err(Error::BoxOverflow(_))));
    }

    #[test]
    fn polynomial_c_specializes() {
        let v = ParameterBase::p0().view();
        let x = MultiPoly::var(0, 1);
        let bx = PartBox::new(2, 3);
        let mu = Partition::from_parts(&[1]);
        let poly = apply_c(&basis::<MultiPoly>(&mu), &x, &v, bx).unwrap();
        let num = apply_c(&basis::<Q>(&mu), &r(5, 11), &v, bx).unwrap();
        for lam in enum_box(2, 3) {
            let p = poly.get(&lam).map(|p| poly_eval(p, &[r(5, 11)]).unwrap()).unwrap_or_else(Q::zero);
            assert_eq!(p, num.get(&lam).cloned().unwrap_or_else(Q::zero));
        }
    }
}
