//! The classical case analyses, stated literally in terms of vanishing
//! products and invariant equalities. They duplicate what the constraint
//! solver decides and exist to cross-check it.

use crate::coefficients::{DensityPair, SeriesSpec};
use crate::invariants::{b_at, invariant, InvariantKind};
use crate::scalars::{int, pochhammer, Rational};

use super::svc_holds;

fn inv_eq(kind: InvariantKind, n: &Rational, a: &DensityPair, b: &DensityPair) -> bool {
    let va = invariant(kind, n, a).expect("raw invariants have no domain restriction");
    let vb = invariant(kind, n, b).expect("raw invariants have no domain restriction");
    va.value.is_some() && va.value == vb.value
}

fn nz(n: &Rational, p: &DensityPair, pairs: &[(i64, i64)]) -> bool {
    pairs.iter().all(|&(i, j)| !b_at(n, i, j, p).is_zero())
}

fn product_zero(n: &Rational, p: &DensityPair, pairs: &[(i64, i64)]) -> bool {
    !nz(n, p, pairs)
}

/// Non-resonant length 5: vanishing condition, then cases (i)–(v).
pub fn nonres5(n: &Rational, a: &DensityPair, b: &DensityPair) -> bool {
    if !svc_holds(&SeriesSpec::new(n.clone(), 5), a, b) {
        return false;
    }
    let order = |p: &DensityPair| pochhammer(&(p.delta() - n), 4);
    if order(a) * order(b) == int(0) {
        return true;
    }
    // With every Pochhammer factor nonzero, a and b share their B zero set.
    let p = a;
    let x1 = product_zero(n, p, &[(4, 0)]);
    let x2 = product_zero(n, p, &[(4, 2), (2, 0)]);
    let x3 = product_zero(n, p, &[(4, 1), (3, 0), (3, 1)]);
    if [x1, x2, x3].iter().filter(|&&z| z).count() >= 2 {
        return true;
    }
    if !x1 && !x2 && x3 {
        return inv_eq(InvariantKind::I, n, a, b);
    }
    if !x1 && nz(n, p, &[(4, 1), (3, 0), (3, 1)]) && x2 {
        return inv_eq(InvariantKind::J, n, a, b);
    }
    if x1 && nz(n, p, &[(4, 1), (3, 0), (4, 2), (3, 1), (2, 0)]) {
        return inv_eq(InvariantKind::K, n, a, b);
    }
    inv_eq(InvariantKind::I, n, a, b) && inv_eq(InvariantKind::J, n, a, b)
}

/// Non-resonant length 6: both length-5 subquotients equivalent.
pub fn length6(n: &Rational, a: &DensityPair, b: &DensityPair) -> bool {
    nonres5(n, a, b) && nonres5(&(n + int(1)), a, b)
}

/// Length `l ≥ 8`: equal `(γ, δ)` or a de Rham pair
/// `(3(ν+1)², ν)`, `(3ν², ν+1)`.
pub fn length8(a: &DensityPair, b: &DensityPair) -> bool {
    let (ga, da) = (a.gamma(), a.delta());
    let (gb, db) = (b.gamma(), b.delta());
    if ga == gb && da == db {
        return true;
    }
    let bol = |g1: &Rational, d1: &Rational, g2: &Rational, d2: &Rational| {
        let nu = d1.clone();
        *d2 == &nu + int(1)
            && *g1 == int(3) * (&nu + int(1)) * (&nu + int(1))
            && *g2 == int(3) * &nu * &nu
    };
    bol(&ga, &da, &gb, &db) || bol(&gb, &db, &ga, &da)
}

fn lac_spec(n: &Rational, pattern: &[usize]) -> SeriesSpec {
    SeriesSpec::with_pattern(n.clone(), pattern.to_vec()).expect("valid pattern")
}

/// Pattern `{0,2,4}`: vanishing condition, then `I` equality when none of
/// the three quantities vanishes.
pub fn lac024(n: &Rational, a: &DensityPair, b: &DensityPair) -> bool {
    let spec = lac_spec(n, &[0, 2, 4]);
    if !svc_holds(&spec, a, b) {
        return false;
    }
    let all_nonzero = crate::invariants::svc_profile(&spec, a).iter().all(|e| !e.is_zero);
    !all_nonzero || inv_eq(InvariantKind::I, n, a, b)
}

/// Pattern `{0,2,3,5}`: vanishing condition, then `M` equality when none of
/// the four quantities vanishes.
pub fn lac0235(n: &Rational, a: &DensityPair, b: &DensityPair) -> bool {
    let spec = lac_spec(n, &[0, 2, 3, 5]);
    if !svc_holds(&spec, a, b) {
        return false;
    }
    let all_nonzero = crate::invariants::svc_profile(&spec, a).iter().all(|e| !e.is_zero);
    !all_nonzero || inv_eq(InvariantKind::M, n, a, b)
}

/// Pattern `{0,2,3,4,5}`: vanishing condition, `I` equality when the
/// `(2,0)`, `(4,2)`, `(4,0)` quantities are nonzero, and `M` equality when
/// the `(2,0)`, `(5,3)`, `(3,0)`, `(5,2)` quantities are nonzero.
pub fn lac02345(n: &Rational, a: &DensityPair, b: &DensityPair) -> bool {
    let spec = lac_spec(n, &[0, 2, 3, 4, 5]);
    if !svc_holds(&spec, a, b) {
        return false;
    }
    let nonzero = |pairs: &[(i64, i64)]| {
        pairs
            .iter()
            .all(|&(i, j)| !crate::invariants::svc_value(n, i, j, a).is_zero())
    };
    let i_ok = !nonzero(&[(2, 0), (4, 2), (4, 0)]) || inv_eq(InvariantKind::I, n, a, b);
    let m_ok = !nonzero(&[(2, 0), (5, 3), (3, 0), (5, 2)]) || inv_eq(InvariantKind::M, n, a, b);
    i_ok && m_ok
}
