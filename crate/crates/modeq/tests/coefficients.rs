use modeq::coefficients::{
    a_res, b_cmz, b_eval, b_symbolic, b_upoly, bbar_res, h_k, pair_on_zero_locus, CoeffKey, DensityPair,
};
use modeq::error::Error;
use modeq::scalars::{int, pochhammer, rat, GDPoly, QSqrt3, Rational};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=8).prop_map(|(p, q)| rat(p, q))
}

fn pair() -> impl Strategy<Value = DensityPair> {
    (small_rat(), small_rat()).prop_map(|(l, m)| DensityPair::new(l, m))
}

fn q(r: Rational) -> QSqrt3 {
    QSqrt3::from_rational(r)
}

fn c(r: Rational) -> GDPoly {
    GDPoly::constant(q(r))
}

fn key(m: Rational, r: u32) -> CoeffKey {
    CoeffKey::new(m, r)
}

/// The three displayed low-gap lines.
fn displayed(m: &Rational, r: u32) -> GDPoly {
    let (g, d) = (GDPoly::g(), GDPoly::d());
    let gamma = &g * &g;
    match r {
        2 => &gamma - &(d.scale(&q(m * int(2) + int(1))) + c(m * m + m + int(1))),
        3 => {
            let bracket = d.scale(&q(m + int(1))) + c(int(1));
            &(&gamma * &g) - &(&g * &bracket).scale(&q(int(3)))
        }
        4 => {
            let lin = m * int(2) + int(3);
            let inner = d.scale(&q(int(2) * &lin)) - c(int(2) * m * m + int(6) * m - int(3));
            let tail = d.scale(&q(int(2) * &lin)) + c(m * m + int(3) * m + int(6));
            &(&gamma * &gamma) - &(&(&gamma * &inner) + &tail.scale(&q(rat(3, 5) * m * (m + int(3)))))
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn low_gaps_match_displayed_lines(m in small_rat(), r in 2u32..=4) {
        prop_assert_eq!(b_symbolic(&key(m.clone(), r)).unwrap(), displayed(&m, r));
    }

    #[test]
    fn parity_in_g(m in small_rat(), r in 2u32..=6) {
        let b = b_symbolic(&key(m, r)).unwrap();
        let flipped = if r % 2 == 0 { b.clone() } else { -b.clone() };
        prop_assert_eq!(b.neg_g(), flipped);
    }

    #[test]
    fn antidiagonal_symmetry(m in small_rat(), r in 2u32..=6) {
        let dual = key(int(1) - &m - int(r as i64), r);
        prop_assert_eq!(b_symbolic(&dual).unwrap().neg_d(), b_symbolic(&key(m, r)).unwrap());
    }

    #[test]
    fn evaluation_matches_symbolic(m in small_rat(), r in 2u32..=6, p in pair()) {
        let k = key(m, r);
        let sym = b_symbolic(&k).unwrap().eval(&p.gamma_half(), &q(p.delta()));
        prop_assert_eq!(b_eval(&k, &p).unwrap(), sym);
    }

    #[test]
    fn h_is_a_gap_two_value(k in small_rat(), p in pair()) {
        let b = b_eval(&key(p.delta() - &k, 2), &p).unwrap();
        prop_assert_eq!(q(h_k(&k, &p)), b.scale(&int(3)));
    }

    #[test]
    fn b_flips_with_conjugation(m in small_rat(), r in 2u32..=6, p in pair()) {
        let k = key(m, r);
        match (b_cmz(&k, &p), b_cmz(&k, &p.conjugate())) {
            (Ok(x), Ok(y)) => prop_assert_eq!(if r % 2 == 0 { x } else { -x }, y),
            (Err(Error::DenominatorVanishes { .. }), Err(Error::DenominatorVanishes { .. })) => {}
            other => prop_assert!(false, "mismatched results {:?}", other),
        }
    }

    #[test]
    fn upoly_agrees_at_zero(m in small_rat(), r in 2u32..=6, p in pair()) {
        let u = b_upoly(r, &p, &m).unwrap();
        prop_assert_eq!(u.eval(&QSqrt3::zero()), b_eval(&key(m, r), &p).unwrap());
    }

    #[test]
    fn zero_locus_pairs_are_zeros(m in small_rat(), r in 2u32..=5, cc in small_rat()) {
        let k = key(m, r);
        if let Some(p) = pair_on_zero_locus(&k, &cc).unwrap() {
            prop_assert!(b_eval(&k, &p).unwrap().is_zero());
            prop_assert_eq!(p.c(), cc);
        }
    }
}

#[test]
fn factorizations() {
    let b = |m: Rational, r: u32| b_symbolic(&key(m, r)).unwrap();
    for m in [rat(-1, 2), int(-1), rat(-3, 2), int(-2)] {
        for r in 2..=7u32 {
            let rr = int(r as i64);
            if &m * int(2) + &rr < int(3) {
                continue;
            }
            let upper_gap = &m * int(2) + &rr - int(1);
            let lower_gap = int(1) - &m * int(2);
            let to_u = |x: &Rational| x.to_integer().try_into().unwrap();
            let prod = &b(int(1) - &m, to_u(&upper_gap)) * &b(m.clone(), to_u(&lower_gap));
            assert_eq!(b(m.clone(), r), prod, "m = {m}, r = {r}");
        }
    }
    for r in 3..=7u32 {
        assert_eq!(b(int(0), r), &GDPoly::g() * &b(int(1), r - 1));
        let low = int(1) - int(r as i64);
        assert_eq!(b(low.clone(), r), &GDPoly::g() * &b(low, r - 1));
    }
}

#[test]
fn documented_values() {
    let g = GDPoly::g;
    assert_eq!(
        b_symbolic(&key(int(-2), 2)).unwrap(),
        &(&g() * &g()) + &(GDPoly::d().scale(&q(int(3))) - c(int(3)))
    );
    let b30 = &g() * &(&(&g() * &g()) - &(GDPoly::d().scale(&q(int(3))) + c(int(3))));
    assert_eq!(b_symbolic(&key(int(0), 3)).unwrap(), b30);

    let p13 = DensityPair::new(int(1), int(3));
    let p04 = DensityPair::new(int(0), int(4));
    assert_eq!(b_eval(&key(int(-2), 2), &p13).unwrap(), q(int(30)));
    assert_eq!(b_eval(&key(int(1), 2), &p04).unwrap(), q(int(12)));
    assert_eq!(b_cmz(&key(int(1), 2), &p04).unwrap(), q(int(-2)));
    assert_eq!(a_res(&rat(-1, 2), &DensityPair::new(int(0), int(1))).unwrap(), q(rat(3, 32)));
    assert_eq!(q(h_k(&int(3), &DensityPair::new(rat(1, 2), rat(1, 2)))), q(int(-21)));
    assert!(b_symbolic(&key(int(0), 1)).is_err());
}

#[test]
fn gap_two_reduction() {
    // b_{m+2,m} = -(δ-m)_2 B_{m+2,m} / (12(2m+1))
    for (m, p) in [(rat(1, 3), (rat(2, 5), int(3))), (int(2), (rat(-1, 2), rat(7, 3)))] {
        let p = DensityPair::new(p.0, p.1);
        let k = key(m.clone(), 2);
        let want = b_eval(&k, &p).unwrap().scale(&(-pochhammer(&(p.delta() - &m), 2) / (int(12) * (&m * int(2) + int(1)))));
        assert_eq!(b_cmz(&k, &p).unwrap(), want);
    }
}

#[test]
fn denominators_and_splitting() {
    let p = DensityPair::new(rat(1, 3), rat(5, 2));
    assert!(matches!(b_cmz(&key(rat(-1, 2), 2), &p), Err(Error::DenominatorVanishes { .. })));
    // (δ - m)_r = 0 kills the scalar
    let split = DensityPair::new(int(0), int(3));
    assert!(b_cmz(&key(int(2), 3), &split).unwrap().is_zero());
}

#[test]
fn antidiagonal_resonant_values() {
    assert!(a_res(&int(0), &DensityPair::new(int(2), int(2))).unwrap().is_zero());
    assert!(a_res(&int(-1), &DensityPair::new(int(3), int(2))).unwrap().is_zero());
    assert!(a_res(&rat(1, 3), &DensityPair::new(int(0), int(1))).is_err());
}

#[test]
fn resonant_gap_three_closed_form() {
    // The general resonant formula at m = 0, r = 3 reduces to
    // b̄_{3,0} = -(1/(72√3)) (δ)_3 γ^{1/2} (5/6 B_{3,1} + δ - 3).
    for (l, m) in [(rat(1, 3), rat(5, 2)), (int(2), rat(-1, 4)), (rat(-3, 7), int(4)), (rat(1, 2), rat(9, 2))] {
        let p = DensityPair::new(l, m);
        let d = p.delta();
        let b31 = b_eval(&key(int(1), 2), &p).unwrap();
        let inner = b31.scale(&rat(5, 6)) + q(&d - int(3));
        let pref = QSqrt3::new(int(0), rat(-1, 216)).scale(&pochhammer(&d, 3));
        let want = pref * p.gamma_half() * inner;
        assert_eq!(bbar_res(&key(int(0), 3), &p).unwrap(), want);
    }
}

#[test]
fn factor_difference_vanishes_at_m() {
    // B_{u+r,u} - B_{u+r,u+1-2m} B_{u+1-2m,u} vanishes at u = m
    let p = DensityPair::new(rat(2, 7), rat(-5, 3));
    for (m, r) in [(int(-1), 5u32), (rat(-1, 2), 4), (rat(-3, 2), 6)] {
        let lower = (int(1) - &m * int(2)).to_integer().try_into().unwrap();
        let whole = b_upoly(r, &p, &int(0)).unwrap();
        let upper = b_upoly(r - lower, &p, &(int(1) - &m * int(2))).unwrap();
        let low = b_upoly(lower, &p, &int(0)).unwrap();
        let diff = whole - upper * low;
        assert!(diff.eval(&q(m.clone())).is_zero(), "m = {m}");
        assert!(diff.degree().is_some());
    }
}
