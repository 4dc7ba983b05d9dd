//! Exact scalars: rationals, the field Q(√3), and the polynomial rings used
//! to carry symbolic identities.

mod poly;
mod qsqrt3;

pub use poly::{parity_split, GDPoly, UPoly};
pub use qsqrt3::QSqrt3;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Commutative ring with a rational embedding; the common interface of
/// every coefficient carrier in the crate.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn from_int(k: i64) -> Self {
        Self::from_rational(&int(k))
    }
}

/// Rings containing Q(√3).
pub trait Algebra: Ring {
    fn from_q(q: &QSqrt3) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Falling factorial `(x)_r = x(x-1)...(x-r+1)`, with `(x)_0 = 1`.
pub fn pochhammer<T: Ring>(x: &T, r: u32) -> T {
    let mut acc = T::one();
    for t in 0..r {
        acc = acc * (x.clone() - T::from_int(t as i64));
    }
    acc
}

/// `k!` as a rational.
pub fn factorial(k: u32) -> Rational {
    let mut acc = BigInt::one();
    for t in 2..=k {
        acc *= t;
    }
    Rational::from_integer(acc)
}

/// Generalized binomial `(r choose s) = (r)_s / s!` with rational `r`.
pub fn gen_binomial(r: &Rational, s: u32) -> Rational {
    pochhammer(r, s) / factorial(s)
}

/// `3^{r/2}` exactly.
pub fn three_pow_half(r: u32) -> QSqrt3 {
    let half = Rational::from_integer(BigInt::from(3).pow(r / 2));
    if r % 2 == 0 {
        QSqrt3::from_rational(half)
    } else {
        QSqrt3::new(int(0), half)
    }
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// True when `2r` is an odd integer.
pub fn is_half_odd(r: &Rational) -> bool {
    let two = r * int(2);
    two.is_integer() && !r.is_integer()
}

/// The integer value of `r`, if it is a (small) integer.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Parses `"p/q"`, integers, and finite decimals such as `"6.35"` or `"-0.5"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !digits.chars().all(|c| c.is_ascii_digit())
            || (digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let joined = format!("{digits}{frac}");
        let num: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().map_err(|_| bad())? };
        let den = BigInt::from(10).pow(frac.len() as u32);
        let v = Rational::new(num, den);
        return Ok(if neg { -v } else { v });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Canonical string: `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering with `digits` places after the point (rounded half away from zero).
pub fn fmt_decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits as usize));
    }
    out
}
