use proptest::prelude::*;

use spinqw::algebra::{qpoch, Field, Ring, C64, Q};
use spinqw::functions::{f, fhl};
use spinqw::integral::{build_contour, integral_f};
use spinqw::params::ParameterBase;
use spinqw::partitions::{interlaces, Partition};
use spinqw::random::{random_base, Sampler};
use spinqw::weights::{w_big, w_big_star, w_s, w_s_star};

fn rational() -> impl Strategy<Value = Q> {
    (-97i64..=97, 1i64..=97).prop_map(|(p, d)| Q::from_ratio(p, d))
}

fn generic() -> impl Strategy<Value = Q> {
    rational().prop_filter("not 0 or ±1", |x| !x.is_zero() && x.numer().cmp_abs(x.denom()) != std::cmp::Ordering::Equal)
}

fn partition(rows: usize, cols: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=cols, 0..=rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v.into_iter().filter(|&p| p > 0).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qpoch_splits(x in rational(), q in rational(), n in 0usize..=8, m in 0usize..=8) {
        let whole = qpoch(&x, &q, n + m);
        let split = qpoch(&x, &q, n) * qpoch(&(x.clone() * q.powu(n as u32)), &q, m);
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn rational_equality_is_cross_multiplication(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let (x, y) = (Q::from_ratio(a, b), Q::from_ratio(c, d));
        prop_assert_eq!(x == y, a * d == c * b);
    }

    #[test]
    fn conjugation_is_an_involution(p in partition(6, 6)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        let conj = p.conjugate();
        for k in 1..=7 {
            let direct = p.parts().iter().filter(|&&x| x == k).count();
            prop_assert_eq!(conj.col_mult(k), direct);
        }
    }

    #[test]
    fn interlacing_is_containment_plus_column_bound(lam in partition(4, 5), mu in partition(4, 5)) {
        let (lc, mc) = (lam.conjugate(), mu.conjugate());
        let cols = lam.first().max(mu.first());
        let expected = lam.contains(&mu) && (1..=cols).all(|r| lc.part(r) <= mc.part(r) + 1);
        prop_assert_eq!(interlaces(&lam, &mu), expected);
    }

    #[test]
    fn shifted_products_depend_on_the_right_index(seed in 0u64..1000, o in 0usize..3, k in 0usize..4, i in 0usize..6) {
        let mut smp = Sampler::new(seed);
        let b = random_base(&mut smp, 12);
        let w = b.clone().view().plain_shift(o).mixed(k);
        let sq = |x: &Q| x.clone().powu(2);
        let j = i + o;
        // s·ξ follows i+o+k and s/ξ follows i+o.
        prop_assert_eq!(w.s(i).unwrap() * w.xi(i).unwrap(), sq(&b.rs[j + k]) * sq(&b.rx[j + k]));
        prop_assert_eq!(w.s(i).unwrap().div(&w.xi(i).unwrap()).unwrap(), sq(&b.rs[j]).div(&sq(&b.rx[j])).unwrap());
    }

    #[test]
    fn weights_vanish_off_conservation(
        u in generic(), s in generic(), t2 in generic(),
        i in 0usize..=6, j in 0usize..=6, k in 0usize..=6, l in 0usize..=6,
    ) {
        let q = Q::from_ratio(1, 3);
        let s2 = s.powu(2);
        if i + j != k + l {
            if j <= 1 && l <= 1 {
                prop_assert!(w_s(&q, &u, &s, i, j, k, l).map(|w| w.is_zero()).unwrap_or(false));
            }
            prop_assert!(w_big(&q, &t2, &s2, i, j, k, l).map(|w| w.is_zero()).unwrap_or(false));
        }
        if i + l != k + j {
            if j <= 1 && l <= 1 {
                prop_assert!(w_s_star(&q, &u, &s, i, l, k, j).map(|w| w.is_zero()).unwrap_or(false));
            }
            prop_assert!(w_big_star(&q, &t2, &s2, i, l, k, j).map(|w| w.is_zero()).unwrap_or(false));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn f_is_symmetric_in_kappa(lam in partition(3, 3), a in generic(), b in generic(), c in generic()) {
        let v = ParameterBase::p0().view();
        let e = Partition::empty();
        let base = f(&lam, &e, &[a.clone(), b.clone(), c.clone()], &v).unwrap();
        prop_assert_eq!(&base, &f(&lam, &e, &[b.clone(), a.clone(), c.clone()], &v).unwrap());
        prop_assert_eq!(&base, &f(&lam, &e, &[a, c, b], &v).unwrap());
    }

    #[test]
    fn f_vanishes_off_support(lam in partition(4, 3), mu in partition(4, 3), a in generic(), b in generic()) {
        let v = ParameterBase::p0().view();
        let (lc, mc) = (lam.conjugate(), mu.conjugate());
        let cols = lam.first().max(mu.first());
        let inside = (1..=cols).all(|r| mc.part(r) <= lc.part(r) && lc.part(r) <= mc.part(r) + 2);
        if !inside {
            prop_assert!(f(&lam, &mu, &[a, b], &v).unwrap().is_zero());
        }
    }

    #[test]
    fn hall_littlewood_is_symmetric_in_u(nu in partition(2, 3), a in generic(), b in generic()) {
        prop_assume!(a != b);
        let v = ParameterBase::p0().view();
        let e = Partition::empty();
        match (fhl(&nu, &e, &[a.clone(), b.clone()], &v), fhl(&nu, &e, &[b, a], &v)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            _ => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn integral_is_symmetric_and_real(k1 in -0.3f64..0.3, k2 in -0.3f64..0.3, which in 0usize..3) {
        let mu: Partition = ["1", "2,1", "1,1"][which].parse().unwrap();
        let v = ParameterBase::p0().to_numeric().view();
        let c = build_contour(&v, 128, 1e-3).unwrap();
        let (a, b) = (C64::new(k1, 0.0), C64::new(k2, 0.0));
        let x = integral_f(&mu, &[a, b], &v, &c).unwrap();
        let y = integral_f(&mu, &[b, a], &v, &c).unwrap();
        prop_assert!((x - y).norm() < 1e-10);
        prop_assert!(x.im.abs() < 1e-9);
    }
}
