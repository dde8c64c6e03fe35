//! Three-vertex Yang-Baxter equations and their exhaustive checker.
//!
//! Every side is a sum over internal edges; conservation fixes all but one
//! internal label, which is iterated. Weights are memoized per parameter point.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{Field, Q};
use crate::error::{Error, Result};
use crate::random::Sampler;
use crate::report::{Mode, VerificationReport};
use crate::weights::{compositions, r_matrix, w_big, w_big_col, w_col, w_s, w_s_star, w_tilde, w_tilde_star};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YbeInstance {
    /// Two higher-spin rows crossing through the six-vertex R-matrix.
    HigherSpin,
    /// Three q-Hahn vertices.
    QHahn,
    /// Dual higher-spin rows with R.
    Dual,
    /// One q-Hahn vertex and two dual rows, xs = yt.
    Cauchy,
    /// q-Hahn equation with η-deformed parameters.
    DeformedQHahn,
    /// Cauchy-type equation with η-deformed parameters.
    DeformedCauchy,
    /// Colored Cauchy-type equation, two colors, y = xt/s.
    ColoredDeformed,
    /// Cauchy-type equation with one analytically continued label.
    ContinuedCauchy,
}

pub const ALL_INSTANCES: [YbeInstance; 8] = [
    YbeInstance::HigherSpin,
    YbeInstance::QHahn,
    YbeInstance::Dual,
    YbeInstance::Cauchy,
    YbeInstance::DeformedQHahn,
    YbeInstance::DeformedCauchy,
    YbeInstance::ColoredDeformed,
    YbeInstance::ContinuedCauchy,
];

impl YbeInstance {
    pub fn name(&self) -> &'static str {
        match self {
            YbeInstance::HigherSpin => "hs",
            YbeInstance::QHahn => "w",
            YbeInstance::Dual => "dual",
            YbeInstance::Cauchy => "cauchy",
            YbeInstance::DeformedQHahn => "def-w",
            YbeInstance::DeformedCauchy => "def-cauchy",
            YbeInstance::ColoredDeformed => "col-def",
            YbeInstance::ContinuedCauchy => "cont-cauchy",
        }
    }
}

impl fmt::Display for YbeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for YbeInstance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_INSTANCES
            .iter()
            .find(|i| i.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown Yang-Baxter instance {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

/// Free parameters of all instances; each instance reads the ones it needs.
///
/// q-Hahn instances take t_i² and η² directly.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<K> {
    pub q: K,
    pub x: K,
    pub y: K,
    pub s: K,
    pub t: K,
    pub eta: K,
    pub t1sq: K,
    pub t2sq: K,
    pub t3sq: K,
    pub eta_sq: K,
}

impl<K: Field> Point<K> {
    /// Draws the parameters of `inst`, enforcing its constraint.
    pub fn sample(inst: YbeInstance, smp: &mut Sampler) -> Result<Self> {
        let mut g = || K::from_q(&smp.generic());
        let mut p = Point {
            q: g(),
            x: g(),
            y: g(),
            s: g(),
            t: g(),
            eta: g(),
            t1sq: g(),
            t2sq: g(),
            t3sq: g(),
            eta_sq: g(),
        };
        match inst {
            YbeInstance::QHahn => p.eta_sq = K::one(),
            YbeInstance::Cauchy | YbeInstance::ContinuedCauchy => {
                p.eta = K::one();
                p.y = (p.x.clone() * p.s.clone()).div(&p.t)?;
            }
            YbeInstance::DeformedCauchy => p.y = (p.x.clone() * p.s.clone()).div(&p.t)?,
            YbeInstance::ColoredDeformed => p.y = (p.x.clone() * p.t.clone()).div(&p.s)?,
            _ => {}
        }
        Ok(p)
    }

    /// Shifts x and t_1² so that a correct equation stops holding.
    pub fn perturbed(&self) -> Self {
        let mut p = self.clone();
        p.x = p.x + K::one();
        p.t1sq = p.t1sq + K::one();
        p
    }

    pub fn check_constraint(&self, inst: YbeInstance) -> Result<()> {
        let ok = match inst {
            YbeInstance::Cauchy | YbeInstance::DeformedCauchy | YbeInstance::ContinuedCauchy => {
                self.x.clone() * self.s.clone() == self.y.clone() * self.t.clone()
            }
            YbeInstance::ColoredDeformed => self.x.clone() * self.t.clone() == self.y.clone() * self.s.clone(),
            _ => true,
        };
        let plain = match inst {
            YbeInstance::QHahn => self.eta_sq == K::one(),
            YbeInstance::Cauchy | YbeInstance::ContinuedCauchy => self.eta == K::one(),
            _ => true,
        };
        if ok && plain {
            Ok(())
        } else {
            Err(Error::Precondition(format!("parameter constraint of {inst} violated")))
        }
    }
}

/// External labels. `Plain` is (a1, a2, a3; b1, b2, b3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Boundary<K> {
    Plain([usize; 6]),
    Colored { a1: Vec<usize>, a2: Vec<usize>, b1: Vec<usize>, b2: Vec<usize>, a: usize, b: usize },
    /// Thin a1, b1, thick a3, b2, continued label α on the left and q^Δα on top.
    Continued { a1: usize, b1: usize, a3: usize, b2: usize, delta: i64, alpha: K },
}

impl<K: fmt::Debug> fmt::Display for Boundary<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Plain(l) => write!(f, "{l:?}"),
            Boundary::Colored { a1, a2, b1, b2, a, b } => write!(f, "A1={a1:?} A2={a2:?} a={a} B1={b1:?} B2={b2:?} b={b}"),
            Boundary::Continued { a1, b1, a3, b2, delta, alpha } => {
                write!(f, "a1={a1} b1={b1} a3={a3} b2={b2} delta={delta} alpha={alpha:?}")
            }
        }
    }
}

struct Memo<'a, K> {
    p: &'a Point<K>,
    cache: RefCell<HashMap<(u8, Vec<usize>), K>>,
}

impl<'a, K: Field> Memo<'a, K> {
    fn new(p: &'a Point<K>) -> Self {
        Memo { p, cache: RefCell::new(HashMap::new()) }
    }

    fn get(&self, slot: u8, labels: &[usize], f: impl FnOnce(&Point<K>) -> Result<K>) -> Result<K> {
        let key = (slot, labels.to_vec());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = f(self.p)?;
        self.cache.borrow_mut().insert(key, v.clone());
        Ok(v)
    }
}

fn sub(a: usize, b: usize) -> Option<usize> {
    a.checked_sub(b)
}

fn add_color(v: &[usize], c: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    if c > 0 {
        w[c - 1] += 1;
    }
    w
}

fn sub_color(v: &[usize], c: usize) -> Option<Vec<usize>> {
    let mut w = v.to_vec();
    if c > 0 {
        w[c - 1] = w[c - 1].checked_sub(1)?;
    }
    Some(w)
}

fn side_impl<K: Field>(inst: YbeInstance, side: Side, bd: &Boundary<K>, m: &Memo<K>) -> Result<K> {
    let mut sum = K::zero();
    match (inst, bd) {
        (YbeInstance::HigherSpin, Boundary::Plain([a1, a2, a3, b1, b2, b3])) => {
            let (a1, a2, a3, b1, b2, b3) = (*a1, *a2, *a3, *b1, *b2, *b3);
            let wx = |l: [usize; 4]| m.get(0, &l, |p| w_s(&p.q, &p.x, &p.s, l[0], l[1], l[2], l[3]));
            let wy = |l: [usize; 4]| m.get(1, &l, |p| w_s(&p.q, &p.y, &p.s, l[0], l[1], l[2], l[3]));
            let rr = |l: [usize; 4]| m.get(2, &l, |p| r_matrix(&p.q, &p.x.div(&p.y)?, l[0], l[1], l[2], l[3]));
            match side {
                Side::L => {
                    for l1 in 0..=a1 + a2 {
                        let (Some(l2), Some(l3)) = (sub(a1 + a2, l1), sub(l1 + a3, b1)) else { continue };
                        if l2 > 1 || l3 > 1 {
                            continue;
                        }
                        sum = sum + wx([a1, a2, l1, l2])? * wy([l1, a3, b1, l3])? * rr([l2, l3, b2, b3])?;
                    }
                }
                Side::R => {
                    for l1 in 0..=b1 + b2 {
                        let (Some(l2), Some(l3)) = (sub(b1 + b2, l1), sub(l1 + b3, a1)) else { continue };
                        if l2 > 1 || l3 > 1 {
                            continue;
                        }
                        sum = sum + rr([a2, a3, l2, l3])? * wy([a1, l3, l1, b3])? * wx([l1, l2, b1, b2])?;
                    }
                }
            }
        }
        (YbeInstance::Dual, Boundary::Plain([a1, a2, a3, b1, b2, b3])) => {
            let (a1, a2, a3, b1, b2, b3) = (*a1, *a2, *a3, *b1, *b2, *b3);
            let wx = |l: [usize; 4]| m.get(0, &l, |p| w_s_star(&p.q, &p.x, &p.s, l[0], l[1], l[2], l[3]));
            let wy = |l: [usize; 4]| m.get(1, &l, |p| w_s_star(&p.q, &p.y, &p.s, l[0], l[1], l[2], l[3]));
            let rr = |l: [usize; 4]| m.get(2, &l, |p| r_matrix(&p.q, &p.y.div(&p.x)?, l[0], l[1], l[2], l[3]));
            match side {
                Side::L => {
                    for l1 in 0..=a1 + 1 {
                        let (Some(l2), Some(l3)) = (sub(l1 + a2, a1), sub(b1 + a3, l1)) else { continue };
                        if l2 > 1 || l3 > 1 {
                            continue;
                        }
                        sum = sum + wx([a1, l2, l1, a2])? * wy([l1, l3, b1, a3])? * rr([l3, l2, b3, b2])?;
                    }
                }
                Side::R => {
                    for l1 in 0..=a1 + b3 {
                        let (Some(l3), Some(l2)) = (sub(a1 + b3, l1), sub(l1 + b2, b1)) else { continue };
                        if l2 > 1 || l3 > 1 {
                            continue;
                        }
                        sum = sum + rr([a3, a2, l3, l2])? * wy([a1, b3, l1, l3])? * wx([l1, b2, b1, l2])?;
                    }
                }
            }
        }
        (YbeInstance::QHahn | YbeInstance::DeformedQHahn, Boundary::Plain([a1, a2, a3, b1, b2, b3])) => {
            let (a1, a2, a3, b1, b2, b3) = (*a1, *a2, *a3, *b1, *b2, *b3);
            // Slot s holds W with (t², s²) chosen by `pair`.
            let w = |slot: u8, l: [usize; 4]| {
                m.get(slot, &l, |p| {
                    let e = &p.eta_sq;
                    let (t2, s2) = match slot {
                        0 => (e.clone() * p.t2sq.clone(), e.clone() * p.t3sq.clone()),
                        1 => (p.t1sq.clone(), p.t3sq.clone()),
                        2 => (e.clone() * p.t1sq.clone(), e.clone() * p.t2sq.clone()),
                        3 => (p.t1sq.clone(), p.t2sq.clone()),
                        4 => (e.clone() * p.t1sq.clone(), e.clone() * p.t3sq.clone()),
                        _ => (p.t2sq.clone(), p.t3sq.clone()),
                    };
                    w_big(&p.q, &t2, &s2, l[0], l[1], l[2], l[3])
                })
            };
            match side {
                Side::L => {
                    for l1 in 0..=b1 + b2 {
                        let (Some(l3), Some(l2)) = (sub(b3 + l1, a1), sub(b1 + b2, l1)) else { continue };
                        sum = sum + w(0, [a3, a2, l3, l2])? * w(1, [l3, a1, b3, l1])? * w(2, [l2, l1, b2, b1])?;
                    }
                }
                Side::R => {
                    for l1 in 0..=a1 + a2 {
                        let (Some(l2), Some(l3)) = (sub(a1 + a2, l1), sub(a3 + l1, b1)) else { continue };
                        sum = sum + w(3, [a2, a1, l2, l1])? * w(4, [a3, l1, l3, b1])? * w(5, [l3, l2, b3, b2])?;
                    }
                }
            }
        }
        (YbeInstance::Cauchy | YbeInstance::DeformedCauchy, Boundary::Plain([a1, a2, a3, b1, b2, b3])) => {
            let (a1, a2, a3, b1, b2, b3) = (*a1, *a2, *a3, *b1, *b2, *b3);
            let big = |l: [usize; 4]| {
                m.get(0, &l, |p| w_big(&p.q, &p.t.powu(2), &p.s.powu(2), l[0], l[1], l[2], l[3]))
            };
            // slot 1: (ηx; ηs), 2: (y; t), 3: (ηy; ηt), 4: (x; s)
            let dual = |slot: u8, l: [usize; 4]| {
                m.get(slot, &l, |p| {
                    let e = &p.eta;
                    let (u, s) = match slot {
                        1 => (e.clone() * p.x.clone(), e.clone() * p.s.clone()),
                        2 => (p.y.clone(), p.t.clone()),
                        3 => (e.clone() * p.y.clone(), e.clone() * p.t.clone()),
                        _ => (p.x.clone(), p.s.clone()),
                    };
                    w_s_star(&p.q, &u, &s, l[0], l[1], l[2], l[3])
                })
            };
            for l1 in 0..=1 {
                match side {
                    Side::L => {
                        let (Some(l2), Some(l3)) = (sub(b2 + l1, b1), sub(b3 + a1, l1)) else { continue };
                        sum = sum + big([a3, a2, l3, l2])? * dual(1, [l3, l1, b3, a1])? * dual(2, [l2, b1, b2, l1])?;
                    }
                    Side::R => {
                        let (Some(l2), Some(l3)) = (sub(a2 + l1, a1), sub(a3 + b1, l1)) else { continue };
                        sum = sum + dual(3, [a2, l1, l2, a1])? * dual(4, [a3, b1, l3, l1])? * big([l3, l2, b3, b2])?;
                    }
                }
            }
        }
        (YbeInstance::ColoredDeformed, Boundary::Colored { a1, a2, b1, b2, a, b }) => {
            let n = a1.len();
            let key = |parts: &[&[usize]], extra: &[usize]| -> Vec<usize> {
                parts.iter().flat_map(|v| v.iter().copied()).chain(extra.iter().copied()).collect()
            };
            let big = |i: &[usize], j: &[usize], k: &[usize], l: &[usize]| {
                m.get(0, &key(&[i, j, k, l], &[]), |p| w_big_col(&p.q, &p.t.powu(2), &p.s.powu(2), i, j, k, l))
            };
            // slot 1: (x/η; ηs), 2: (y; t), 3: (y/η; ηt), 4: (x; s)
            let thin = |slot: u8, i: &[usize], ca: usize, k: &[usize], cb: usize| {
                m.get(slot, &key(&[i, k], &[ca, cb]), |p| {
                    let e = &p.eta;
                    let (u, s) = match slot {
                        1 => (p.x.div(e)?, e.clone() * p.s.clone()),
                        2 => (p.y.clone(), p.t.clone()),
                        3 => (p.y.div(e)?, e.clone() * p.t.clone()),
                        _ => (p.x.clone(), p.s.clone()),
                    };
                    w_col(&p.q, &u, &s, i, ca, k, cb)
                })
            };
            for c in 0..=n {
                match side {
                    Side::L => {
                        let (Some(l2), Some(l3)) = (sub_color(&add_color(b1, *b), c), sub_color(&add_color(b2, c), *a)) else {
                            continue;
                        };
                        let w1 = big(a2, a1, &l3, &l2)?;
                        if w1.is_zero() {
                            continue;
                        }
                        sum = sum + w1 * thin(1, &l3, *a, b2, c)? * thin(2, &l2, c, b1, *b)?;
                    }
                    Side::R => {
                        let (Some(l2), Some(l3)) = (sub_color(&add_color(a1, *a), c), sub_color(&add_color(a2, c), *b)) else {
                            continue;
                        };
                        let w1 = thin(3, a1, *a, &l2, c)?;
                        if w1.is_zero() {
                            continue;
                        }
                        sum = sum + w1 * thin(4, a2, c, &l3, *b)? * big(&l3, &l2, b2, b1)?;
                    }
                }
            }
        }
        (YbeInstance::ContinuedCauchy, Boundary::Continued { a1, b1, a3, b2, delta, alpha }) => {
            let (a1, b1, a3, b2, delta) = (*a1, *b1, *a3, *b2, *delta);
            let p = m.p;
            let (t2, s2) = (p.t.powu(2), p.s.powu(2));
            for l1 in 0..=1 {
                match side {
                    Side::L => {
                        let Some(l2) = sub(b2 + l1, b1) else { continue };
                        let d0 = a3 as i64 - l2 as i64;
                        let wt = w_tilde(&p.q, &t2, &s2, a3, d0, l2)?;
                        if wt.is_zero() {
                            continue;
                        }
                        let beta = alpha.clone() * p.q.pow_int(d0)?;
                        let out = w_tilde_star(&p.q, &p.x, &p.s, &beta, l1, a1)?;
                        if d0 + out.shift != delta {
                            continue;
                        }
                        sum = sum + wt * out.weight * w_s_star(&p.q, &p.y, &p.t, l2, b1, b2, l1)?;
                    }
                    Side::R => {
                        let Some(l3) = sub(a3 + b1, l1) else { continue };
                        let out = w_tilde_star(&p.q, &p.y, &p.t, alpha, l1, a1)?;
                        let wt = w_tilde(&p.q, &t2, &s2, l3, delta - out.shift, b2)?;
                        sum = sum + w_s_star(&p.q, &p.x, &p.s, a3, b1, l3, l1)? * out.weight * wt;
                    }
                }
            }
        }
        _ => return Err(Error::Precondition(format!("boundary shape does not fit instance {inst}"))),
    }
    Ok(sum)
}

/// One side of the equation for `inst` at a single boundary.
pub fn ybe_side<K: Field>(inst: YbeInstance, side: Side, boundary: &Boundary<K>, p: &Point<K>) -> Result<K> {
    p.check_constraint(inst)?;
    side_impl(inst, side, boundary, &Memo::new(p))
}

/// Label bounds: thick labels up to `thick`, colored compositions up to size `colored`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub thick: usize,
    pub colored: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { thick: 4, colored: 3 }
    }
}

fn plain_boundaries(inst: YbeInstance, cap: usize) -> Vec<[usize; 6]> {
    // Which of (a1, a2, a3, b1, b2, b3) are thick.
    let thick = match inst {
        YbeInstance::HigherSpin | YbeInstance::Dual => [true, false, false, true, false, false],
        YbeInstance::Cauchy | YbeInstance::DeformedCauchy => [false, true, true, false, true, true],
        _ => [true; 6],
    };
    let ranges: Vec<usize> = thick.iter().map(|&t| if t { cap } else { 1 }).collect();
    let mut out = Vec::new();
    let mut cur = [0usize; 6];
    loop {
        let [a1, a2, a3, b1, b2, b3] = cur;
        let conserved = match inst {
            YbeInstance::Dual => a2 + a3 + b1 == a1 + b2 + b3,
            _ => a1 + a2 + a3 == b1 + b2 + b3,
        };
        if conserved {
            out.push(cur);
        }
        let mut i = 0;
        loop {
            if i == 6 {
                return out;
            }
            if cur[i] < ranges[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn colored_boundaries<K>(colors: usize, cap: usize) -> Vec<Boundary<K>> {
    let comps = compositions(colors, cap);
    let size = |v: &[usize]| v.iter().sum::<usize>();
    let mut out = Vec::new();
    for a1 in &comps {
        for a2 in &comps {
            for a in 0..=colors {
                let total = add_color(&(0..colors).map(|c| a1[c] + a2[c]).collect::<Vec<_>>(), a);
                for b in 0..=colors {
                    let Some(rest) = sub_color(&total, b) else { continue };
                    for b1 in &comps {
                        let Some(b2) = (0..colors).map(|c| rest[c].checked_sub(b1[c])).collect::<Option<Vec<_>>>() else {
                            continue;
                        };
                        if size(&b2) > cap {
                            continue;
                        }
                        out.push(Boundary::Colored { a1: a1.clone(), a2: a2.clone(), b1: b1.clone(), b2, a, b });
                    }
                }
            }
        }
    }
    out
}

fn continued_boundaries<K: Field>(cap: usize, alphas: &[K]) -> Vec<Boundary<K>> {
    let mut out = Vec::new();
    for a1 in 0..=1 {
        for b1 in 0..=1 {
            for a3 in 0..=cap {
                for b2 in 0..=cap {
                    for delta in -2..=(cap as i64 + 2) {
                        for alpha in alphas {
                            out.push(Boundary::Continued { a1, b1, a3, b2, delta, alpha: alpha.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Boundaries enumerated by the checker; continued boundaries need their α values.
pub fn boundaries<K: Field>(inst: YbeInstance, caps: Caps, alphas: &[K]) -> Vec<Boundary<K>> {
    match inst {
        YbeInstance::ColoredDeformed => colored_boundaries(2, caps.colored),
        YbeInstance::ContinuedCauchy => continued_boundaries(caps.thick, alphas),
        _ => plain_boundaries(inst, caps.thick).into_iter().map(Boundary::Plain).collect(),
    }
}

/// Checks LHS = RHS exactly on every boundary within `caps` at `trials` random points.
///
/// With `perturb` the right side is evaluated at a shifted point, which must fail.
pub fn check_instance(inst: YbeInstance, caps: Caps, trials: usize, seed: u64, perturb: bool) -> VerificationReport {
    let label = if perturb { format!("ybe:{inst}:perturbed") } else { format!("ybe:{inst}") };
    let mut rep = VerificationReport::new(label, Mode::Exact, seed);
    let mut smp = Sampler::new(seed);
    for trial in 0..trials {
        let run = |smp: &mut Sampler| -> Result<VerificationReport> {
            let p = Point::<Q>::sample(inst, smp)?;
            let alphas: Vec<Q> = (0..6).map(|_| smp.generic()).collect();
            let rp = if perturb { p.perturbed() } else { p.clone() };
            let (ml, mr) = (Memo::new(&p), Memo::new(&rp));
            let mut part = VerificationReport::new("", Mode::Exact, seed);
            part.trials = 1;
            for bd in boundaries(inst, caps, &alphas) {
                let lhs = side_impl(inst, Side::L, &bd, &ml)?;
                let rhs = side_impl(inst, Side::R, &bd, &mr)?;
                part.exact(|| format!("trial {trial}: {bd}"), &lhs, &rhs);
            }
            Ok(part)
        };
        match smp.retry(run) {
            Ok(part) => rep.absorb(part),
            Err(e) => rep.fail(format!("trial {trial}"), format!("error: {e}"), String::new()),
        }
    }
    rep
}
