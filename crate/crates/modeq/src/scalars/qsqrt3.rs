use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::{fmt_rational, int, Algebra, Rational, Ring};
use crate::error::{Error, Result};

/// `a + b√3` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSqrt3 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QSqrt3 { a, b: int(0) }
    }

    pub fn sqrt3() -> Self {
        QSqrt3 { a: int(0), b: int(1) }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    /// The rational value, if `b = 0`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Galois conjugate `a - b√3`.
    pub fn conj(&self) -> Self {
        QSqrt3 { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(3) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QSqrt3 { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt3 { a: &self.a * r, b: &self.b * r }
    }

    /// Exact sign of the real number `a + b√3`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: compare a² with 3b².
        let lhs = &self.a * &self.a;
        let rhs = int(3) * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Floating approximation, for rendering only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }

    /// `[a, b]` as canonical rational strings.
    pub fn to_strings(&self) -> [String; 2] {
        [fmt_rational(&self.a), fmt_rational(&self.b)]
    }
}

fn sign(r: &Rational) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl PartialOrd for QSqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum().cmp(&0)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.a), Zero::is_zero(&self.b)) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√3", self.b),
            (false, false) => write!(f, "{} + {}√3", self.a, self.b),
        }
    }
}

impl Serialize for QSqrt3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl From<Rational> for QSqrt3 {
    fn from(a: Rational) -> Self {
        QSqrt3::from_rational(a)
    }
}

impl Add for QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: QSqrt3) -> QSqrt3 {
        QSqrt3 { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: QSqrt3) -> QSqrt3 {
        QSqrt3 { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: QSqrt3) -> QSqrt3 {
        let a = &self.a * &rhs.a + int(3) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QSqrt3 { a, b }
    }
}

/// Panics on a zero divisor; use [`QSqrt3::checked_div`] to handle it.
impl Div for QSqrt3 {
    type Output = QSqrt3;
    fn div(self, rhs: QSqrt3) -> QSqrt3 {
        self.checked_div(&rhs).expect("QSqrt3 division by zero")
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3 { a: -self.a, b: -self.b }
    }
}

macro_rules! ref_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<'a> $tr<&'a QSqrt3> for &'a QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, rhs: &'a QSqrt3) -> QSqrt3 { self.clone().$m(rhs.clone()) }
        }
    )*};
}
ref_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for QSqrt3 {
    fn add_assign(&mut self, rhs: QSqrt3) {
        self.a += rhs.a;
        self.b += rhs.b;
    }
}

impl SubAssign for QSqrt3 {
    fn sub_assign(&mut self, rhs: QSqrt3) {
        self.a -= rhs.a;
        self.b -= rhs.b;
    }
}

impl MulAssign for QSqrt3 {
    fn mul_assign(&mut self, rhs: QSqrt3) {
        *self = self.clone() * rhs;
    }
}

impl Ring for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::default_zero()
    }
    fn one() -> Self {
        QSqrt3::from_rational(int(1))
    }
    fn from_rational(r: &Rational) -> Self {
        QSqrt3::from_rational(r.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
}

impl Algebra for QSqrt3 {
    fn from_q(q: &QSqrt3) -> Self {
        q.clone()
    }
}

impl QSqrt3 {
    fn default_zero() -> Self {
        QSqrt3 { a: int(0), b: int(0) }
    }

    pub fn zero() -> Self {
        Self::default_zero()
    }

    pub fn one() -> Self {
        QSqrt3::from_rational(int(1))
    }

    pub fn is_zero(&self) -> bool {
        Ring::is_zero(self)
    }
}
