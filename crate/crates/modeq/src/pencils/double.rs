//! The exceptional pair of `δ = 0` points sharing a length-5 class.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{fmt_rational, int, rat, Rational};

use super::QuadSurd;

/// `γ + γ'` and `(γ - γ')²` for the two `δ = 0` points with equal
/// `Ĩ` and `J̃`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DoubleClass {
    #[serde(serialize_with = "ser")]
    pub sum: Rational,
    #[serde(serialize_with = "ser")]
    pub diff_sq: Rational,
}

fn ser<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

impl DoubleClass {
    /// The two values of `γ`, exact in `Q(√diff_sq)`.
    pub fn gammas(&self) -> (QuadSurd, QuadSurd) {
        let h = rat(1, 2);
        (
            QuadSurd::new(&self.sum * &h, h.clone(), self.diff_sq.clone()),
            QuadSurd::new(&self.sum * &h, -h, self.diff_sq.clone()),
        )
    }
}

/// At `δ = 0`, `Ĩ = (γ² + a_Iγ + b_I)/(c_Iγ + d_I)` and likewise for `J̃`.
/// Equal values at `γ ≠ γ'` give `c·γγ' + d·(γ+γ') = bc - ad` for both;
/// solving the pair determines `γ + γ'` and `γγ'`.
///
/// Returns `None` when the two roots coincide. Resonant `N₅` and the values
/// where `Ĩ` or `J̃` degenerates to a linear function are rejected.
pub fn delta0_double_class(n5: &Rational) -> Result<Option<DoubleClass>> {
    let excluded = [rat(1, 2), int(1), rat(3, 2), int(0), rat(5, 2), rat(5, 6)];
    let abs = if *n5 < int(0) { -n5.clone() } else { n5.clone() };
    if excluded.contains(&abs) {
        return Err(Error::Domain(format!("N5 = {} is exceptional for the δ = 0 analysis", fmt_rational(n5))));
    }
    let sq = n5 * n5;
    let a_i = int(-2) * (&sq + rat(7, 4));
    let b_i = (&sq + int(2) * n5 + rat(7, 4)) * (&sq - int(2) * n5 + rat(7, 4));
    let c_i = int(1);
    let d_i = rat(-2, 5) * (&sq + rat(5, 4));
    let a_j = int(-2) * (&sq + rat(1, 2));
    let b_j = rat(1, 2) * (&sq + rat(3, 4)) * (&sq + rat(11, 4));
    let c_j = int(-6) * (&sq - rat(5, 12));
    let d_j = (&sq + rat(3, 4)) * (&sq + rat(35, 4));
    let rhs_i = &b_i * &c_i - &a_i * &d_i;
    let rhs_j = &b_j * &c_j - &a_j * &d_j;
    let e = &c_i * &d_j - &c_j * &d_i;
    if e.is_zero() {
        return Err(Error::Domain("the two linear conditions are dependent".into()));
    }
    let prod = (&rhs_i * &d_j - &rhs_j * &d_i) / &e;
    let sum = (&c_i * &rhs_j - &c_j * &rhs_i) / &e;
    let diff_sq = &sum * &sum - int(4) * prod;
    if diff_sq.is_zero() {
        return Ok(None);
    }
    Ok(Some(DoubleClass { sum, diff_sq }))
}
