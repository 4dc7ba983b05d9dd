use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{int, Algebra, QSqrt3, Rational, Ring};

/// Sparse polynomial in `g` (standing for γ^{1/2}) and `d` (standing for δ)
/// with Q(√3) coefficients. Keys are `(power of g, power of d)`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GDPoly {
    terms: BTreeMap<(u32, u32), QSqrt3>,
}

impl GDPoly {
    pub fn constant(c: QSqrt3) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(gp: u32, dp: u32, c: QSqrt3) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((gp, dp), c);
        }
        GDPoly { terms }
    }

    /// The variable `g`.
    pub fn g() -> Self {
        Self::monomial(1, 0, QSqrt3::one())
    }

    /// The variable `d`.
    pub fn d() -> Self {
        Self::monomial(0, 1, QSqrt3::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &QSqrt3)> {
        self.terms.iter()
    }

    pub fn coeff(&self, gp: u32, dp: u32) -> QSqrt3 {
        self.terms.get(&(gp, dp)).cloned().unwrap_or_else(QSqrt3::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: QSqrt3) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(QSqrt3::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, s: &QSqrt3) -> Self {
        let mut out = GDPoly::default();
        for (k, c) in &self.terms {
            out.add_term(*k, c * s);
        }
        out
    }

    /// Substitution `g ← g0`, `d ← d0`.
    pub fn eval(&self, g0: &QSqrt3, d0: &QSqrt3) -> QSqrt3 {
        let mut acc = QSqrt3::zero();
        for ((a, b), c) in &self.terms {
            acc += c.clone() * pow(g0, *a) * pow(d0, *b);
        }
        acc
    }

    /// Polynomial substitution `g ← x`, `d ← y`.
    pub fn compose(&self, x: &GDPoly, y: &GDPoly) -> GDPoly {
        let mut acc = GDPoly::default();
        for ((a, b), c) in &self.terms {
            acc = acc + pow(x, *a) * pow(y, *b) * GDPoly::constant(c.clone());
        }
        acc
    }

    /// `p(-g, d)`.
    pub fn neg_g(&self) -> Self {
        self.map_signs(|a, _| a % 2 == 1)
    }

    /// `p(g, -d)`.
    pub fn neg_d(&self) -> Self {
        self.map_signs(|_, b| b % 2 == 1)
    }

    fn map_signs(&self, flip: impl Fn(u32, u32) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((a, b), if flip(a, b) { -c.clone() } else { c.clone() }))
            .collect();
        GDPoly { terms }
    }

    /// Exact division by `g`; `None` if some term has no factor `g`.
    pub fn div_g(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a == 0 {
                return None;
            }
            terms.insert((a - 1, b), c.clone());
        }
        Some(GDPoly { terms })
    }

    /// Rewrites an even polynomial in `g` as a polynomial in `γ = g²`.
    /// The result reuses the first slot for the power of `γ`.
    pub fn even_to_gamma(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a % 2 == 1 {
                return None;
            }
            terms.insert((a / 2, b), c.clone());
        }
        Some(GDPoly { terms })
    }

    /// Every coefficient rational?
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(QSqrt3::is_rational)
    }
}

fn pow<T: Ring>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Splits `p` into its even and odd parts in `g`.
pub fn parity_split(p: &GDPoly) -> (GDPoly, GDPoly) {
    let mut even = GDPoly::default();
    let mut odd = GDPoly::default();
    for (&(a, b), c) in &p.terms {
        let part = if a % 2 == 0 { &mut even } else { &mut odd };
        part.terms.insert((a, b), c.clone());
    }
    (even, odd)
}

impl Add for GDPoly {
    type Output = GDPoly;
    fn add(mut self, rhs: GDPoly) -> GDPoly {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for GDPoly {
    type Output = GDPoly;
    fn sub(self, rhs: GDPoly) -> GDPoly {
        self + (-rhs)
    }
}

impl Neg for GDPoly {
    type Output = GDPoly;
    fn neg(self) -> GDPoly {
        let terms = self.terms.into_iter().map(|(k, c)| (k, -c)).collect();
        GDPoly { terms }
    }
}

impl Mul for GDPoly {
    type Output = GDPoly;
    fn mul(self, rhs: GDPoly) -> GDPoly {
        let mut out = GDPoly::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl<'a> Add<&'a GDPoly> for &'a GDPoly {
    type Output = GDPoly;
    fn add(self, rhs: &'a GDPoly) -> GDPoly {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub<&'a GDPoly> for &'a GDPoly {
    type Output = GDPoly;
    fn sub(self, rhs: &'a GDPoly) -> GDPoly {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a GDPoly> for &'a GDPoly {
    type Output = GDPoly;
    fn mul(self, rhs: &'a GDPoly) -> GDPoly {
        self.clone() * rhs.clone()
    }
}

impl Ring for GDPoly {
    fn zero() -> Self {
        GDPoly::default()
    }
    fn one() -> Self {
        GDPoly::constant(QSqrt3::one())
    }
    fn from_rational(r: &Rational) -> Self {
        GDPoly::constant(QSqrt3::from_rational(r.clone()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Algebra for GDPoly {
    fn from_q(q: &QSqrt3) -> Self {
        GDPoly::constant(q.clone())
    }
}

impl fmt::Display for GDPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if *a > 0 {
                write!(f, "·g^{a}")?;
            }
            if *b > 0 {
                write!(f, "·d^{b}")?;
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial in a formal variable `u` over Q(√3).
/// The coefficient list never ends in a zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<QSqrt3>,
}

impl UPoly {
    pub fn from_coeffs(mut coeffs: Vec<QSqrt3>) -> Self {
        while coeffs.last().is_some_and(QSqrt3::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: QSqrt3) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Self::from_coeffs(vec![QSqrt3::zero(), QSqrt3::one()])
    }

    pub fn coeffs(&self) -> &[QSqrt3] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, u0: &QSqrt3) -> QSqrt3 {
        let mut acc = QSqrt3::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u0.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative `d/du`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&int(k as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(QSqrt3::zero);
                let b = rhs.coeffs.get(k).cloned().unwrap_or_else(QSqrt3::zero);
                a + b
            })
            .collect();
        UPoly::from_coeffs(coeffs)
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        self + (-rhs)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UPoly::default();
        }
        let mut coeffs = vec![QSqrt3::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Ring for UPoly {
    fn zero() -> Self {
        UPoly::default()
    }
    fn one() -> Self {
        UPoly::constant(QSqrt3::one())
    }
    fn from_rational(r: &Rational) -> Self {
        UPoly::constant(QSqrt3::from_rational(r.clone()))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Algebra for UPoly {
    fn from_q(q: &QSqrt3) -> Self {
        UPoly::constant(q.clone())
    }
}
