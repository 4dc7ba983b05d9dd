use modeq::scalars::{
    fmt_decimal, gen_binomial, parity_split, parse_rational, pochhammer, rat, three_pow_half, int, GDPoly, QSqrt3,
    Rational, UPoly,
};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn q3() -> impl Strategy<Value = QSqrt3> {
    (small_rat(), small_rat()).prop_map(|(a, b)| QSqrt3::new(a, b))
}

fn gd() -> impl Strategy<Value = GDPoly> {
    prop::collection::vec((0u32..4, 0u32..4, q3()), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(GDPoly::default(), |acc, (a, b, c)| acc + GDPoly::monomial(a, b, c))
    })
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(q3(), 0..5).prop_map(UPoly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qsqrt3_field_laws(x in q3(), y in q3(), z in q3()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QSqrt3::one());
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn qsqrt3_sign_matches_float(x in q3()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn pochhammer_splits(x in small_rat(), r in 0u32..6, s in 0u32..6) {
        let lhs = pochhammer(&x, r + s);
        let rhs = pochhammer(&x, r) * pochhammer(&(&x - int(r as i64)), s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gd_ring_axioms(p in gd(), q in gd(), r in gd()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in gd(), q in gd(), g0 in q3(), d0 in q3()) {
        let ev = |x: &GDPoly| x.eval(&g0, &d0);
        prop_assert_eq!(ev(&(&p * &q)), ev(&p) * ev(&q));
        prop_assert_eq!(ev(&(&p + &q)), ev(&p) + ev(&q));
    }

    #[test]
    fn parity_split_recombines(p in gd(), g0 in q3(), d0 in q3()) {
        let (even, odd) = parity_split(&p);
        prop_assert_eq!(&even + &odd, p.clone());
        let neg = p.eval(&(-g0.clone()), &d0);
        prop_assert_eq!(neg, even.eval(&g0, &d0) - odd.eval(&g0, &d0));
    }

    #[test]
    fn derivative_rules(p in upoly(), q in upoly(), u0 in q3()) {
        let d = |x: &UPoly| x.derivative();
        prop_assert_eq!(d(&(p.clone() * q.clone())), d(&p) * q.clone() + p.clone() * d(&q));
        prop_assert_eq!(d(&(p.clone() + q.clone())), d(&p) + d(&q));
        if let Some(deg) = p.degree() {
            prop_assert!(!p.coeffs()[deg].is_zero());
        }
        prop_assert_eq!((p.clone() * q.clone()).eval(&u0), p.eval(&u0) * q.eval(&u0));
    }

    #[test]
    fn parse_roundtrip(x in small_rat()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn documented_values() {
    assert_eq!(pochhammer(&int(5), 2), int(20));
    assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
    assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
    assert_eq!(gen_binomial(&int(4), 5), int(0));
    assert_eq!(three_pow_half(0), QSqrt3::one());
    assert_eq!(three_pow_half(2), QSqrt3::from_rational(int(3)));
    assert_eq!(three_pow_half(3), QSqrt3::new(int(0), int(3)));
}

#[test]
fn symbolic_pochhammer() {
    // (d - 1)_2 = d² - 3d + 2
    let x = GDPoly::d() - GDPoly::constant(QSqrt3::one());
    let expect = GDPoly::d() * GDPoly::d() - GDPoly::d().scale(&QSqrt3::from_rational(int(3)))
        + GDPoly::constant(QSqrt3::from_rational(int(2)));
    assert_eq!(pochhammer(&x, 2), expect);
}

#[test]
fn parity_split_examples() {
    let g = GDPoly::g;
    let three = QSqrt3::from_rational(int(3));
    let p = g() * g() + GDPoly::d();
    assert_eq!(parity_split(&p), (p.clone(), GDPoly::default()));
    let q = g() * g() * g() - g().scale(&three);
    assert_eq!(parity_split(&q), (GDPoly::default(), q.clone()));
}

#[test]
fn parsing() {
    assert_eq!(parse_rational("6.35").unwrap(), rat(127, 20));
    assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
    assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    assert!(parse_rational("").is_err());
    assert_eq!(fmt_decimal(&rat(-2, 3), 3), "-0.667");
    assert_eq!(fmt_decimal(&rat(1, 8), 2), "0.13");
}

#[test]
fn sqrt3_ordering() {
    // 433/250 < √3 < 26/15
    let s = QSqrt3::sqrt3();
    assert!(s > QSqrt3::from_rational(rat(433, 250)));
    assert!(s < QSqrt3::from_rational(rat(26, 15)));
    assert_eq!(QSqrt3::new(int(2), int(-1)).signum(), 1);
    assert_eq!(QSqrt3::new(int(-2), int(1)).signum(), -1);
}
