//! Simultaneous-vanishing profiles and the rational invariants built from
//! ratios of the `B` polynomials.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coefficients::{b_eval, b_symbolic, big_n, CoeffKey, DensityPair, SeriesSpec};
use crate::equivalence::{resonance_class, ResonanceClass};
use crate::error::{Error, Result};
use crate::scalars::{int, pochhammer, rat, GDPoly, QSqrt3, Rational, Ring};

/// One quantity `(δ-n-j)_{i-j} B_{n+i,n+j}`, or the resonant `δγ^{1/2}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SvcEntry {
    pub i: i64,
    pub j: i64,
    pub value: QSqrt3,
    pub is_zero: bool,
    /// True for the extra `δγ^{1/2}` entry of integral resonant series.
    pub resonant: bool,
}

impl SvcEntry {
    fn new(i: i64, j: i64, value: QSqrt3, resonant: bool) -> Self {
        let is_zero = value.is_zero();
        SvcEntry { i, j, value, is_zero, resonant }
    }
}

/// `B_{n+i,n+j}` at a density pair.
pub fn b_at(n: &Rational, i: i64, j: i64, p: &DensityPair) -> QSqrt3 {
    b_eval(&key(n, i, j), p).expect("gap >= 2")
}

/// `B_{n+i,n+j}` as a polynomial in `(g, d)`.
pub fn b_sym(n: &Rational, i: i64, j: i64) -> GDPoly {
    b_symbolic(&key(n, i, j)).expect("gap >= 2")
}

fn key(n: &Rational, i: i64, j: i64) -> CoeffKey {
    assert!(i - j >= 2, "B_{{n+i,n+j}} needs i - j >= 2");
    CoeffKey::new(n + int(j), (i - j) as u32)
}

/// `(δ-n-j)_{i-j} B_{n+i,n+j}`.
pub fn svc_value(n: &Rational, i: i64, j: i64, p: &DensityPair) -> QSqrt3 {
    let poch = pochhammer(&(p.delta() - n - int(j)), (i - j) as u32);
    b_at(n, i, j, p).scale(&poch)
}

/// In-pattern pairs `(i, j)` with gap 2, 3 or 4, ordered by gap then `j`.
pub fn svc_pairs(pattern: &[usize]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for gap in 2..=4i64 {
        for &j in pattern {
            let i = j as i64 + gap;
            if pattern.contains(&(i as usize)) {
                out.push((i, j as i64));
            }
        }
    }
    out
}

/// The simultaneous-vanishing profile of one module.
pub fn svc_profile(spec: &SeriesSpec, p: &DensityPair) -> Vec<SvcEntry> {
    let mut out: Vec<SvcEntry> = svc_pairs(&spec.pattern)
        .into_iter()
        .map(|(i, j)| SvcEntry::new(i, j, svc_value(&spec.n, i, j, p), false))
        .collect();
    if resonance_class(spec) == ResonanceClass::IntegralResonant {
        let j = -crate::scalars::to_i64(&spec.n).expect("integral");
        out.push(SvcEntry::new(j + 1, j, delta_g(p), true));
    }
    out
}

/// `δγ^{1/2}`.
pub fn delta_g(p: &DensityPair) -> QSqrt3 {
    p.gamma_half().scale(&p.delta())
}

/// Names of the invariants.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum InvariantKind {
    I,
    J,
    K,
    M,
    R,
    Itilde,
    Jtilde,
    Mtilde,
    Rtilde,
    GeneralRatio,
}

impl InvariantKind {
    pub const NAMED: [InvariantKind; 9] = [
        InvariantKind::I,
        InvariantKind::J,
        InvariantKind::K,
        InvariantKind::M,
        InvariantKind::R,
        InvariantKind::Itilde,
        InvariantKind::Jtilde,
        InvariantKind::Mtilde,
        InvariantKind::Rtilde,
    ];
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for InvariantKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InvariantKind::NAMED
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown invariant {s:?}")))
    }
}

/// An invariant value; `value = None` means the defining denominator vanishes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantValue {
    pub kind: InvariantKind,
    pub value: Option<QSqrt3>,
}

impl InvariantValue {
    fn ratio(kind: InvariantKind, num: QSqrt3, den: QSqrt3) -> Self {
        let value = if den.is_zero() { None } else { Some(num / den) };
        InvariantValue { kind, value }
    }

    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.value {
            Some(v) => v.serialize(s),
            None => s.serialize_str("undefined"),
        }
    }
}

/// `N₅ = n + 3/2`.
pub fn n5(n: &Rational) -> Rational {
    big_n(n, 5)
}

/// `N₆ = n + 2`.
pub fn n6(n: &Rational) -> Rational {
    big_n(n, 6)
}

/// Evaluates one named invariant.
pub fn invariant(kind: InvariantKind, n: &Rational, p: &DensityPair) -> Result<InvariantValue> {
    use InvariantKind::*;
    let b = |i, j| b_at(n, i, j, p);
    let (g, d) = (p.gamma_half(), QSqrt3::from_rational(p.delta()));
    let eval = |poly: GDPoly| poly.eval(&g, &d);
    Ok(match kind {
        I => InvariantValue::ratio(kind, b(4, 0), b(4, 2) * b(2, 0)),
        J => InvariantValue::ratio(kind, b(4, 0) * b(3, 1), b(4, 1) * b(3, 0)),
        K => InvariantValue::ratio(kind, b(4, 2) * b(3, 1) * b(2, 0), b(4, 1) * b(3, 0)),
        M => InvariantValue::ratio(kind, b(5, 2) * b(2, 0), b(5, 3) * b(3, 0)),
        R => {
            let gamma = p.gamma();
            let delta = p.delta();
            let num = &gamma * (&gamma - int(3));
            let den = (&gamma - &delta - int(1)) * (&gamma + &delta - int(1));
            InvariantValue::ratio(kind, num.into(), den.into())
        }
        Rtilde => {
            let gamma = p.gamma();
            let delta = p.delta();
            let num = &gamma * &gamma - int(3) * &gamma;
            let den = &gamma + int(1) - &delta * &delta;
            InvariantValue::ratio(kind, num.into(), den.into())
        }
        Itilde => {
            let den = eval(aux_combination(AuxKind::B420, n)?);
            InvariantValue::ratio(kind, b(4, 2) * b(2, 0), den)
        }
        Jtilde => {
            let num = eval(aux_combination(AuxKind::Bplus43210, n)?);
            let den = eval(aux_combination(AuxKind::Bminus43210, n)?);
            InvariantValue::ratio(kind, num, den)
        }
        Mtilde => {
            let den = eval(aux_combination(AuxKind::B5320, n)?);
            InvariantValue::ratio(kind, b(5, 2) * b(2, 0), den)
        }
        GeneralRatio => {
            return Err(Error::Domain("use general_ratio for the general family".into()))
        }
    })
}

/// Auxiliary polynomial combinations whose ratios give the tilde invariants.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AuxKind {
    B420,
    B4310,
    Bminus43210,
    Bplus43210,
    B5320,
}

/// The auxiliary combination as an exact `(g, d)` polynomial.
pub fn aux_combination(kind: AuxKind, n: &Rational) -> Result<GDPoly> {
    let nn = n5(n);
    let sq = &nn * &nn;
    let b = |i, j| b_sym(n, i, j);
    let divide = |p: GDPoly, s: Rational, what: &str| -> Result<GDPoly> {
        if Ring::is_zero(&s) {
            return Err(Error::Domain(format!("{what} undefined at n = {n}")));
        }
        Ok(p.scale(&QSqrt3::from_rational(int(1) / s)))
    };
    let b420 = || divide(b(4, 0) - b(4, 2) * b(2, 0), int(4) * (&sq - int(1)), "B420");
    let b4310 = || divide(b(4, 0) * b(3, 1) - b(4, 1) * b(3, 0), &sq - rat(9, 4), "B4310");
    match kind {
        AuxKind::B420 => b420(),
        AuxKind::B4310 => b4310(),
        AuxKind::Bminus43210 => {
            let v = b4310()? - b(3, 1) * b420()?;
            Ok(v.scale(&QSqrt3::from_rational(int(5))))
        }
        AuxKind::Bplus43210 => {
            let v = b4310()? + b(3, 1) * b420()?;
            Ok(v.scale(&QSqrt3::from_rational(rat(1, 2))))
        }
        AuxKind::B5320 => {
            let diff = b(5, 2) * b(2, 0) - b(5, 3) * b(3, 0);
            divide(diff, int(6) * n6(n), "B5320")
        }
    }
}

/// `(x·v)/(y·v)` with `v = (B41·B30, B40·B31, B42·B31·B20)`.
pub fn general_ratio(
    x: &[QSqrt3; 3],
    y: &[QSqrt3; 3],
    n: &Rational,
    p: &DensityPair,
) -> Result<InvariantValue> {
    let cross = [
        &x[1] * &y[2] - &x[2] * &y[1],
        &x[2] * &y[0] - &x[0] * &y[2],
        &x[0] * &y[1] - &x[1] * &y[0],
    ];
    if cross.iter().all(QSqrt3::is_zero) {
        return Err(Error::Domain("x and y are linearly dependent".into()));
    }
    let b = |i, j| b_at(n, i, j, p);
    let v = [b(4, 1) * b(3, 0), b(4, 0) * b(3, 1), b(4, 2) * b(3, 1) * b(2, 0)];
    let dot = |w: &[QSqrt3; 3]| {
        w.iter().zip(&v).fold(QSqrt3::zero(), |acc, (a, b)| acc + a * b)
    };
    Ok(InvariantValue::ratio(InvariantKind::GeneralRatio, dot(x), dot(y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_at_delta_two() {
        let v = invariant(InvariantKind::R, &int(-1), &DensityPair::new(rat(1, 2), rat(5, 2))).unwrap();
        assert_eq!(v.value, Some(QSqrt3::from_rational(rat(12, 13))));
    }

    #[test]
    fn lacunary_pairs() {
        assert_eq!(svc_pairs(&[0, 2, 3, 5]), vec![(2, 0), (5, 3), (3, 0), (5, 2)]);
        assert_eq!(svc_pairs(&[0, 1, 2, 3, 4]).len(), 6);
    }
}
