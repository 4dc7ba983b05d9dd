use modeq::coefficients::{DensityPair, SeriesSpec};
use modeq::invariants::{
    aux_combination, b_sym, general_ratio, invariant, n5, svc_profile, AuxKind, InvariantKind, InvariantValue,
};
use modeq::scalars::{int, rat, GDPoly, QSqrt3, Rational};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=7).prop_map(|(p, q)| rat(p, q))
}

fn pair() -> impl Strategy<Value = DensityPair> {
    (small_rat(), small_rat()).prop_map(|(l, m)| DensityPair::new(l, m))
}

fn q(r: Rational) -> QSqrt3 {
    QSqrt3::from_rational(r)
}

fn k(r: Rational) -> GDPoly {
    GDPoly::constant(q(r))
}

fn gamma() -> GDPoly {
    GDPoly::g() * GDPoly::g()
}

fn d() -> GDPoly {
    GDPoly::d()
}

fn lin(a: Rational, b: Rational) -> GDPoly {
    d().scale(&q(a)) + k(b)
}

fn value(kind: InvariantKind, n: &Rational, p: &DensityPair) -> Option<InvariantValue> {
    invariant(kind, n, p).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_invariance(n in small_rat(), p in pair()) {
        for kind in InvariantKind::NAMED {
            prop_assert_eq!(value(kind, &n, &p), value(kind, &n, &p.conjugate()), "{}", kind);
        }
    }

    #[test]
    fn duality(n in small_rat(), p in pair()) {
        // (N, γ, δ) ↦ (-N, γ, -δ): N5 ↦ -N5 is n ↦ -n - 3, N6 ↦ -N6 is n ↦ -n - 4.
        let dual = p.swapped();
        for kind in [InvariantKind::I, InvariantKind::J, InvariantKind::K] {
            prop_assert_eq!(value(kind, &n, &p), value(kind, &(-&n - int(3)), &dual), "{}", kind);
        }
        // Reversal swaps the numerator and denominator products of M.
        let m = invariant(InvariantKind::M, &n, &p).unwrap().value;
        let m_dual = invariant(InvariantKind::M, &(-&n - int(4)), &dual).unwrap().value;
        match (m, m_dual) {
            (Some(x), Some(y)) => prop_assert_eq!(x * y, QSqrt3::one()),
            (Some(x), None) => prop_assert!(x.is_zero()),
            (None, Some(y)) => prop_assert!(y.is_zero()),
            (None, None) => {}
        }
    }

    #[test]
    fn k_is_j_over_i(n in small_rat(), p in pair()) {
        let v = |kind| invariant(kind, &n, &p).unwrap().value;
        if let (Some(i), Some(j), Some(kk)) = (v(InvariantKind::I), v(InvariantKind::J), v(InvariantKind::K)) {
            if !i.is_zero() {
                prop_assert_eq!(kk, j / i);
            }
        }
    }

    #[test]
    fn jtilde_on_the_special_line(nn in small_rat(), c in small_rat()) {
        let sq = &nn * &nn;
        prop_assume!(sq != int(1) && sq != rat(9, 4) && nn != rat(-1, 6));
        let n = &nn - rat(3, 2);
        let p = DensityPair::from_c_delta(&c, &(&nn + rat(5, 2)));
        let six = int(6) * &nn + int(1);
        let want = (int(2) * p.gamma() - (&nn + int(1)) * &six) / (int(5) * &six);
        let got = invariant(InvariantKind::Jtilde, &n, &p).unwrap();
        if let Some(v) = got.value {
            prop_assert_eq!(v, q(want));
        }
    }

    #[test]
    fn level_of_a_point_satisfies_the_i_conic(n in small_rat(), p in pair()) {
        let nn = n5(&n);
        if let Some(level) = invariant(InvariantKind::I, &n, &p).unwrap().value {
            prop_assert!(ipencil_residual(&nn, &p, &level).is_zero());
        }
    }

    #[test]
    fn general_ratio_specializes_to_j(n in small_rat(), p in pair()) {
        let e = |i: usize| {
            let mut v = [QSqrt3::zero(), QSqrt3::zero(), QSqrt3::zero()];
            v[i] = QSqrt3::one();
            v
        };
        let g = general_ratio(&e(1), &e(0), &n, &p).unwrap();
        prop_assert_eq!(g.value, invariant(InvariantKind::J, &n, &p).unwrap().value);
    }
}

/// Left minus right side of the displayed level-`I` conic in `(γ̃₅, δ)`.
fn ipencil_residual(nn: &Rational, p: &DensityPair, level: &QSqrt3) -> QSqrt3 {
    let sq = q(nn * nn);
    let one = QSqrt3::one();
    let x = q(p.gamma() - int(2) * nn * p.delta());
    let dl = q(p.delta());
    let (a, b) = (level - &one, level - &sq);
    let first = &x - &(&sq + &q(rat(15, 4)));
    let sq1 = &(&a * &first) + &b.scale(&int(2));
    let second = &(&b * &(&dl - &q(nn / int(5)))) + &a.scale(&(rat(6, 5) * nn));
    let lhs = &(&b * &(&sq1 * &sq1)) - &(&a * &(&second * &second)).scale(&int(4));
    let rhs = (&(&a.scale(&int(9)) - &b.scale(&int(4)))
        * &(&a.scale(&(int(16) * nn * nn)) - &b.scale(&int(25))))
        .scale(&(-(nn * nn - int(1)) / int(25)));
    lhs - rhs
}

#[test]
fn identically_one_at_special_offsets() {
    for nn in [int(1), int(-1)] {
        let n = &nn - rat(3, 2);
        assert_eq!(b_sym(&n, 4, 0), &b_sym(&n, 4, 2) * &b_sym(&n, 2, 0));
    }
    for nn in [rat(3, 2), rat(-3, 2)] {
        let n = &nn - rat(3, 2);
        assert_eq!(&b_sym(&n, 4, 0) * &b_sym(&n, 3, 1), &b_sym(&n, 4, 1) * &b_sym(&n, 3, 0));
    }
}

#[test]
fn auxiliary_closed_forms() {
    for nn in [rat(1, 3), rat(-2, 5), int(3), rat(7, 4), int(0)] {
        let n = &nn - rat(3, 2);
        let sq = &nn * &nn;
        let b420 = &gamma() - &(&(&d() * &d()) + &lin(rat(8, 5) * &nn, rat(2, 5) * &sq + rat(1, 2)));
        assert_eq!(aux_combination(AuxKind::B420, &n).unwrap(), b420);

        let u = lin(int(2) * &nn, &sq + rat(3, 4));
        let b4310 = &(&gamma() * &gamma())
            - &(&gamma() * &(&(&d() * &d()) + &lin(rat(12, 5) * &nn, rat(13, 5) * &sq + rat(3, 4))));
        let b4310 = &b4310 + &(&u * &lin(int(4) * &nn, &sq + rat(15, 4))).scale(&q(rat(3, 5)));
        assert_eq!(aux_combination(AuxKind::B4310, &n).unwrap(), b4310);

        let minus = &(&gamma() * &lin(int(6) * &nn, int(-6) * &sq + rat(5, 2)))
            - &(&u * &(&(&d() * &d()).scale(&q(int(5))) - &lin(int(4) * &nn, &sq + rat(35, 4))));
        assert_eq!(aux_combination(AuxKind::Bminus43210, &n).unwrap(), minus);

        let plus = &(&gamma() * &gamma()) - &(&gamma() * &(&(&d() * &d()) + &lin(int(3) * &nn, int(2) * &sq + int(1))));
        let plus = &plus + &(&u * &(&(&d() * &d()) + &lin(int(4) * &nn, &sq + rat(11, 4)))).scale(&q(rat(1, 2)));
        assert_eq!(aux_combination(AuxKind::Bplus43210, &n).unwrap(), plus);
    }
    for n6 in [rat(1, 3), int(-2), rat(5, 2)] {
        let n = &n6 - int(2);
        let g = GDPoly::g();
        let want = &(&gamma() * &g) - &(&g * &(&(&d() * &d()) + &lin(int(2) * &n6, int(3))));
        assert_eq!(aux_combination(AuxKind::B5320, &n).unwrap(), want);
    }
    assert!(aux_combination(AuxKind::B420, &rat(-5, 2)).is_err());
    assert!(aux_combination(AuxKind::B5320, &int(-2)).is_err());
}

#[test]
fn documented_values() {
    let p = DensityPair::new(rat(1, 2), rat(5, 2));
    assert_eq!(invariant(InvariantKind::R, &int(-1), &p).unwrap().value, Some(q(rat(12, 13))));
    // N5 = 1: I is identically one wherever it is defined.
    for p in [DensityPair::new(rat(1, 3), int(2)), DensityPair::new(rat(-4, 5), rat(7, 2))] {
        assert_eq!(invariant(InvariantKind::I, &rat(-1, 2), &p).unwrap().value, Some(QSqrt3::one()));
    }
    // J's denominator contains B_{n+3,n}, which vanishes at γ = 0 when it is odd.
    let flat = DensityPair::new(rat(1, 2), rat(1, 2));
    assert!(!invariant(InvariantKind::J, &rat(1, 3), &flat).unwrap().is_defined());
    assert!(invariant(InvariantKind::GeneralRatio, &int(0), &flat).is_err());
}

#[test]
fn vanishing_profiles() {
    let p = DensityPair::new(rat(1, 3), rat(5, 2));
    let full = svc_profile(&SeriesSpec::new(rat(1, 4), 5), &p);
    assert_eq!(full.len(), 6);
    let lac = svc_profile(&SeriesSpec::with_pattern(int(1), vec![0, 2, 3, 5]).unwrap(), &p);
    let pairs: Vec<(i64, i64)> = lac.iter().map(|e| (e.i, e.j)).collect();
    assert_eq!(pairs, vec![(2, 0), (5, 3), (3, 0), (5, 2)]);
    // integral resonant series carry the extra δγ^{1/2} entry between F_0 and F_1
    let res = svc_profile(&SeriesSpec::new(int(-1), 3), &p);
    assert!(res.iter().any(|e| e.resonant && e.i == 2 && e.j == 1));
}
