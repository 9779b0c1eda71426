mod common;

use eistwist::linalg::{vec_is_zero, IntMatrix};
use eistwist::modsym::{build_space, continued_fraction_symbols, genus, Sign};
use eistwist::quadfield::{is_fundamental, Discriminant};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;

#[test]
fn heilbronn_matches_cosets() {
    for n in [11u64, 13, 23] {
        let space = build_space(n).unwrap();
        for l in [2u64, 3, 5, 7] {
            if l == n {
                continue;
            }
            let want = coset_hecke(&space, l);
            assert_eq!(space.hecke(l).unwrap().matrix, want, "T_{l} at N = {n}");
        }
        let want = coset_hecke(&space, n);
        assert_eq!(space.hecke(n).unwrap().matrix, want, "U_N at N = {n}");
    }
}

#[test]
fn hecke_eigenvalues_at_11() {
    // a_l of the curve 11a
    let space = build_space(11).unwrap();
    for (l, a) in [
        (2u64, -2i64),
        (3, -1),
        (5, 1),
        (7, -2),
        (13, 4),
        (17, -2),
        (19, 0),
    ] {
        let t = space
            .restrict(&space.hecke(l).unwrap().matrix, Sign::Plus)
            .unwrap();
        assert_eq!(t, IntMatrix::from_rows(&[vec![a]]), "T_{l}");
        // on the Eisenstein line T_l = l + 1
        let full = space.hecke(l).unwrap().matrix;
        let char_ok = full.sub_scalar(l as i64 + 1).det() == BigInt::from(0);
        assert!(char_ok);
    }
    let u = space
        .restrict(&space.hecke(11).unwrap().matrix, Sign::Plus)
        .unwrap();
    assert_eq!(u, IntMatrix::from_rows(&[vec![1]]));
}

#[test]
fn dimensions() {
    for n in [11u64, 13, 23, 31, 37, 101, 211] {
        let s = build_space(n).unwrap();
        let g = genus(n) as usize;
        assert_eq!(s.dim_rel(), 2 * g + 1);
        assert_eq!(s.cuspidal().rank(), 2 * g);
        assert_eq!(s.signed(Sign::Plus).rank(), g);
        assert_eq!(s.signed(Sign::Minus).rank(), g);
    }
}

fn level() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![11u64, 23, 31, 37, 61])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_operators_commute(n in level(), a in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), b in prop::sample::select(vec![2u64, 3, 5, 7, 31, 37])) {
        let s = build_space(n).unwrap();
        let ta = s.hecke(a).unwrap().matrix;
        let tb = s.hecke(b).unwrap().matrix;
        prop_assert_eq!(ta.mul(&tb), tb.mul(&ta));
        let u = s.hecke(n).unwrap().matrix;
        prop_assert_eq!(ta.mul(&u), u.mul(&ta));
    }

    #[test]
    fn hecke_commutes_with_star(n in level(), l in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17])) {
        let s = build_space(n).unwrap();
        let t = s.hecke(l).unwrap().matrix;
        prop_assert_eq!(t.mul(s.star()), s.star().mul(&t));
    }

    #[test]
    fn atkin_lehner_is_an_involution_on_cusp_forms(n in level()) {
        let s = build_space(n).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let u = s.restrict(&s.hecke(n).unwrap().matrix, sign).unwrap();
            prop_assert_eq!(u.mul(&u), IntMatrix::identity(u.rows()));
        }
    }

    #[test]
    fn paths_telescope(n in level(), a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500) {
        let s = build_space(n).unwrap();
        let x = (a, b);
        let y = (c, d);
        let inf = (1, 0);
        let zero = (0, 1);
        let mut lhs = s.path_between(zero, x).unwrap();
        add_into(&mut lhs, &s.path_between(x, y).unwrap(), 1);
        add_into(&mut lhs, &s.path_between(y, inf).unwrap(), 1);
        prop_assert_eq!(lhs, s.path_between(zero, inf).unwrap());
    }

    #[test]
    fn continued_fraction_symbols_are_unimodular(a in -2000i64..2000, m in 1i64..2000) {
        prop_assume!(num_integer::gcd(a, m) == 1);
        let syms = continued_fraction_symbols(a, m).unwrap();
        for w in syms.windows(2) {
            // consecutive convergent denominators are coprime
            prop_assert_eq!(num_integer::gcd(w[0].0, w[0].1), 1);
        }
        if let Some(last) = syms.last() {
            prop_assert_eq!(last.0.abs(), m);
        }
    }

    #[test]
    fn theta_is_cuspidal_with_sign_of_d(n in level(), d in -400i64..400) {
        prop_assume!(d.abs() > 1 && is_fundamental(d) && d % n as i64 != 0);
        let s = build_space(n).unwrap();
        let t = s.theta_element(Discriminant::new(d).unwrap()).unwrap();
        prop_assert!(vec_is_zero(&s.boundary().apply(&t.rel_coords)));
        prop_assert_eq!(t.sign, if d > 0 { Sign::Plus } else { Sign::Minus });
        let st = s.star().apply(&t.rel_coords);
        let sign = t.sign.as_i64();
        let want: Vec<BigInt> = t.rel_coords.iter().map(|x| x * sign).collect();
        prop_assert_eq!(st, want);
        prop_assert_eq!(s.signed(t.sign).basis().apply(&t.coords), t.rel_coords);
    }
}
