use modeq::coefficients::{pair_on_zero_locus, CoeffKey, DensityPair, SeriesSpec};
use modeq::equivalence::theorems::{lac0235, lac02345, lac024, length6, length8, nonres5};
use modeq::equivalence::{
    build_constraints, decide, decide_lacunary, decide_pair, decide_with, epsilon_solve, known_tables,
    resonance_class, DecideOptions, ResonanceClass, TableName, Verdict,
};
use modeq::error::Error;
use modeq::invariants::{invariant, InvariantKind};
use modeq::scalars::{int, rat, QSqrt3, Rational};
use proptest::prelude::*;

fn dp(l: Rational, m: Rational) -> DensityPair {
    DensityPair::new(l, m)
}

/// Offsets with denominator 3, 5 or 7: never resonant.
fn generic_n() -> impl Strategy<Value = Rational> {
    (-12i64..=12, prop::sample::select(vec![3i64, 5, 7])).prop_map(|(p, q)| rat(p, q))
        .prop_filter("non-integral", |n| !n.is_integer())
}

/// Weights from a small set so that coincidences happen often.
fn coarse_pair() -> impl Strategy<Value = DensityPair> {
    let vals = vec![int(0), int(1), rat(1, 2), int(2), int(-1), rat(3, 2), rat(1, 3), rat(2, 3)];
    (prop::sample::select(vals.clone()), prop::sample::select(vals)).prop_map(|(l, m)| dp(l, m))
}

fn fine_pair() -> impl Strategy<Value = DensityPair> {
    ((-15i64..=15, 1i64..=6), (-15i64..=15, 1i64..=6)).prop_map(|((a, b), (c, d))| dp(rat(a, b), rat(c, d)))
}

/// A pair on the zero set of `B_{n+i,n+j}`, when one exists at that `c`.
fn zero_pair(n: &Rational, i: i64, j: i64, c: &Rational) -> Option<DensityPair> {
    pair_on_zero_locus(&CoeffKey::new(n + int(j), (i - j) as u32), c).unwrap()
}

fn eqv(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> bool {
    let v = decide(spec, a, b).unwrap();
    assert!(!matches!(v, Verdict::Unsupported { .. }), "unexpected Unsupported");
    v.is_equivalent()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflexive_and_conjugation(n in generic_n(), l in 2usize..=8, a in fine_pair()) {
        let spec = SeriesSpec::new(n, l);
        prop_assert!(eqv(&spec, &a, &a));
        prop_assert!(eqv(&spec, &a, &a.conjugate()));
    }

    #[test]
    fn symmetric_with_inverse_witness(n in generic_n(), l in 3usize..=6, a in coarse_pair(), b in coarse_pair()) {
        let spec = SeriesSpec::new(n, l);
        let ab = decide(&spec, &a, &b).unwrap();
        let ba = decide(&spec, &b, &a).unwrap();
        prop_assert_eq!(ab.outcome(), ba.outcome());
        if let (Verdict::Equivalent { witness: w1, .. }, Verdict::Equivalent { witness: w2, .. }) = (&ab, &ba) {
            for (k, x) in w1 {
                prop_assert_eq!(x * &w2[k], QSqrt3::one());
            }
        }
    }

    #[test]
    fn transitive(n in generic_n(), l in 3usize..=5, a in coarse_pair(), b in coarse_pair(), c in coarse_pair()) {
        let spec = SeriesSpec::new(n, l);
        if eqv(&spec, &a, &b) && eqv(&spec, &b, &c) {
            prop_assert!(eqv(&spec, &a, &c));
        }
    }

    #[test]
    fn witness_solves_every_edge(n in generic_n(), l in 3usize..=6, a in coarse_pair(), b in coarse_pair()) {
        let spec = SeriesSpec::new(n, l);
        if let Verdict::Equivalent { witness, .. } = decide(&spec, &a, &b).unwrap() {
            for e in build_constraints(&spec, &a, &b).edges {
                prop_assert_eq!(&e.c * &witness[&e.i], &e.c_prime * &witness[&e.j]);
                prop_assert!(!witness[&e.i].is_zero());
            }
        }
    }

    #[test]
    fn duality(n in generic_n(), l in 3usize..=7, a in coarse_pair(), b in coarse_pair()) {
        let dual_n = int(2 - l as i64) - &n;
        let v = decide(&SeriesSpec::new(n, l), &a, &b).unwrap();
        let w = decide(&SeriesSpec::new(dual_n, l), &a.swapped(), &b.swapped()).unwrap();
        prop_assert_eq!(v.outcome(), w.outcome());
    }

    #[test]
    fn length_five_case_analysis(n in generic_n(), a in fine_pair(), c in -6i64..=6, pick in 0usize..6) {
        let spec = SeriesSpec::new(n.clone(), 5);
        let slots = [(2, 0), (3, 1), (4, 2), (3, 0), (4, 1), (4, 0)];
        let (i, j) = slots[pick];
        let mut pairs = vec![a.clone(), a.conjugate()];
        pairs.extend(zero_pair(&n, i, j, &rat(c, 2)));
        pairs.extend(zero_pair(&n, i, j, &rat(c, 3)));
        for x in &pairs {
            for y in &pairs {
                prop_assert_eq!(eqv(&spec, x, y), nonres5(&n, x, y), "{:?} vs {:?}", x, y);
            }
        }
    }

    #[test]
    fn length_six_subquotients(n in generic_n(), a in coarse_pair(), b in coarse_pair()) {
        prop_assert_eq!(eqv(&SeriesSpec::new(n.clone(), 6), &a, &b), length6(&n, &a, &b));
    }

    #[test]
    fn length_eight_rule(n in generic_n(), l in 8usize..=9, a in half_pair(), b in half_pair()) {
        prop_assert_eq!(eqv(&SeriesSpec::new(n, l), &a, &b), length8(&a, &b));
    }

    #[test]
    fn lacunary_theorems(n in generic_n(), a in fine_pair(), b in fine_pair(), c in -6i64..=6) {
        let mut pairs = vec![a.clone(), a.conjugate(), b];
        pairs.extend(zero_pair(&n, 4, 2, &rat(c, 2)));
        pairs.extend(zero_pair(&n, 5, 3, &rat(c, 2)));
        let opts = DecideOptions::default();
        for x in &pairs {
            for y in &pairs {
                let run = |pattern: &[usize]| decide_lacunary(pattern, &n, x, y, opts).unwrap().is_equivalent();
                prop_assert_eq!(run(&[0, 2, 4]), lac024(&n, x, y));
                prop_assert_eq!(run(&[0, 2, 3, 5]), lac0235(&n, x, y));
                prop_assert_eq!(run(&[0, 2, 3, 4, 5]), lac02345(&n, x, y));
            }
        }
    }
}

/// Half-integral weights keep the order `δ - n` away from integers when `n`
/// has denominator 3, 5 or 7, so no `(δ-n-j)` factor vanishes.
fn half_pair() -> impl Strategy<Value = DensityPair> {
    (-8i64..=8, -8i64..=8).prop_map(|(a, b)| dp(rat(a, 2), rat(b, 2)))
}

#[test]
fn documented_verdicts() {
    let z = int(0);
    let one = int(1);
    assert!(eqv(&SeriesSpec::new(int(-2), 3), &dp(z.clone(), z.clone()), &dp(one.clone(), one.clone())));
    assert!(!eqv(&SeriesSpec::new(int(-3), 4), &dp(z.clone(), z.clone()), &dp(rat(1, 2), rat(1, 2))));
    assert!(eqv(&SeriesSpec::new(int(-5), 5), &dp(int(1), int(3)), &dp(int(0), int(3))));
    let spec8 = SeriesSpec::new(int(-10), 8);
    let a = dp(rat(1, 3), rat(7, 2));
    assert!(eqv(&spec8, &a, &a.conjugate()));
    assert!(!eqv(&spec8, &a, &dp(rat(2, 5), rat(7, 2))));
}

#[test]
fn resonance_classes() {
    assert_eq!(resonance_class(&SeriesSpec::new(int(0), 2)), ResonanceClass::IntegralResonant);
    assert_eq!(resonance_class(&SeriesSpec::new(rat(-3, 2), 5)), ResonanceClass::HalfIntegralResonant);
    assert_eq!(resonance_class(&SeriesSpec::new(int(-3), 4)), ResonanceClass::NonResonant);
    assert_eq!(resonance_class(&SeriesSpec::new(int(1), 4)), ResonanceClass::NonResonant);
}

#[test]
fn edge_counts() {
    let a = dp(rat(1, 3), rat(5, 2));
    let count = |spec: SeriesSpec| build_constraints(&spec, &a, &a).edges.len();
    assert_eq!(count(SeriesSpec::new(rat(1, 3), 5)), 6);
    let pairs = |pattern: Vec<usize>| {
        let spec = SeriesSpec::with_pattern(int(1), pattern).unwrap();
        let mut e: Vec<(i64, i64)> = build_constraints(&spec, &a, &a).edges.iter().map(|e| (e.i, e.j)).collect();
        e.sort();
        e
    };
    assert_eq!(pairs(vec![0, 2, 3, 5]), vec![(2, 0), (3, 0), (5, 2), (5, 3)]);
    assert_eq!(pairs(vec![0, 2, 3, 4, 5]), vec![(2, 0), (3, 0), (4, 0), (4, 2), (5, 2), (5, 3)]);
}

#[test]
fn solver_edge_cases() {
    // both sides vanishing everywhere: no constraints at all
    let spec = SeriesSpec::new(rat(1, 3), 4);
    let a = dp(rat(1, 2), rat(1, 2));
    let g = build_constraints(&spec, &a, &a);
    let w = epsilon_solve(&g).unwrap();
    assert_eq!(w[&0], QSqrt3::one());
    // one-sided vanishing is the vanishing-condition failure
    let n = rat(1, 3);
    let zero = zero_pair(&n, 2, 0, &rat(1, 2)).expect("B_{n+2,n} is linear in δ");
    let other = dp(rat(2, 7), rat(-3, 5));
    match decide(&SeriesSpec::new(n, 3), &zero, &other).unwrap() {
        Verdict::Inequivalent { failing } => assert_eq!(failing.kind, "vanishing"),
        v => panic!("{v:?}"),
    }
}

#[test]
fn errors_and_unsupported() {
    let a = dp(rat(1, 3), rat(5, 2));
    let b = dp(int(2), rat(1, 4));
    let s1 = SeriesSpec::new(rat(1, 3), 4);
    let s2 = SeriesSpec::new(rat(1, 3), 5);
    assert!(matches!(decide_pair(&s1, &a, &s2, &b), Err(Error::SpecMismatch(_))));
    let v = decide(&SeriesSpec::new(int(-1), 6), &a, &b).unwrap();
    assert_eq!(v.outcome(), "Unsupported");
    assert_eq!(v.exit_code(), 2);
    let opts = DecideOptions::default();
    assert!(matches!(decide_lacunary(&[0, 3], &int(1), &a, &b, opts), Err(Error::UnsupportedPattern(_))));
    assert!(matches!(decide_lacunary(&[0, 2, 3, 5], &int(-2), &a, &b, opts), Err(Error::ExcludedN { .. })));
    assert!(decide_lacunary(&[0, 2, 3, 4, 6], &int(1), &a, &b, opts).is_err());
    let spec = SeriesSpec::with_pattern(int(1), vec![0, 2, 3, 4, 6]).unwrap();
    assert!(decide_with(&spec, &a, &a, DecideOptions { experimental: true }).unwrap().is_equivalent());
}

#[test]
fn resonant_length_four_self_dual() {
    // D³_{λ,λ+2}: order 3, δ = 2, so n = -1. R = γ/(γ+1) separates all but conjugates.
    let spec = SeriesSpec::new(int(-1), 4);
    let lambdas = [rat(1, 3), rat(-2, 5), rat(2, 7), rat(5, 4), rat(-7, 3)];
    let mods: Vec<DensityPair> = lambdas.iter().map(|l| dp(l.clone(), l + int(2))).collect();
    for x in &mods {
        for y in &mods {
            let expect = x == y || *y == x.conjugate();
            assert_eq!(eqv(&spec, x, y), expect);
            assert!(eqv(&spec, x, &x.conjugate()));
        }
    }
}

#[test]
fn resonant_length_four_extra_condition() {
    // n = 0, l = 4: on B_{3,1} = γ - 3δ - 3 = 0 the scalar ζ drops out and
    // (δ)_4 γ^{1/2} must vanish simultaneously as well.
    let spec = SeriesSpec::new(int(0), 4);
    let on_b31 = |c: Rational| DensityPair::from_c_delta(&c, &(&c * &c - int(1)));
    let a = on_b31(int(2)); // δ = 3: (δ)_4 = 0
    let b = on_b31(rat(2, 3));
    let b2 = on_b31(rat(1, 2));
    assert_eq!(a.delta(), int(3));
    match decide(&spec, &a, &b).unwrap() {
        Verdict::Inequivalent { failing } => assert_eq!((failing.i, failing.j), (1, 0)),
        v => panic!("{v:?}"),
    }
    assert!(eqv(&spec, &b, &b2));
}

#[test]
fn tables() {
    let t = known_tables(TableName::DO97).unwrap();
    assert_eq!(t.classes.len(), 2);
    assert!(t.same_class("λ=0", "λ=1"));
    assert!(t.same_class("λ=2", "λ=3") && t.same_class("λ=3", "λ=-1"));
    assert!(!t.same_class("λ=0", "λ=2"));

    let t = known_tables(TableName::GO96).unwrap();
    assert!(t.same_class("λ=0", "λ=1"));
    assert!(t.same_class("λ=2", "λ=3"));
    assert_eq!(t.classes[t.class_of("λ=1/2").unwrap()].len(), 1);
    assert!(!t.same_class("λ=0", "λ=2"));

    let t = known_tables(TableName::Ga00D2).unwrap();
    assert!(t.same_class("λ=0", "λ=-2"));
    assert_eq!(t.classes[t.class_of("λ=0").unwrap()].len(), 2);

    let t = known_tables(TableName::LO99L3).unwrap();
    assert!(t.same_class("λ=9/44", "λ=35/44"));
    assert!(!t.same_class("λ=9/44", "λ=0"));
}

#[test]
fn r_values_in_failure_record() {
    let spec = SeriesSpec::new(int(-1), 4);
    let a = dp(rat(1, 2), rat(5, 2));
    let b = dp(int(1), int(3));
    let ra = invariant(InvariantKind::R, &int(-1), &a).unwrap().value.unwrap();
    match decide(&spec, &a, &b).unwrap() {
        Verdict::Inequivalent { failing } => {
            assert_eq!(failing.kind, "R");
            assert_eq!(failing.value_a, ra);
            assert_eq!(failing.value_b, QSqrt3::from_rational(rat(27, 28)));
        }
        v => panic!("{v:?}"),
    }
}
