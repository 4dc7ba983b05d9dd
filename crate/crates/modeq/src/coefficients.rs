//! Closed-form coefficients: the polynomials `B_{m+r,m}(γ,δ)`, the
//! non-resonant scalars `b`, and the resonant scalars `a` and `b̄`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{
    factorial, fmt_rational, int, is_half_odd, is_integer, pochhammer, rat, three_pow_half, to_i64,
    Algebra, GDPoly, QSqrt3, Rational, Ring, UPoly,
};

/// The weights `(λ, μ)` of one module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DensityPair {
    pub lambda: Rational,
    pub mu: Rational,
}

impl DensityPair {
    pub fn new(lambda: Rational, mu: Rational) -> Self {
        DensityPair { lambda, mu }
    }

    /// Builds the pair with `λ + μ - 1 = c` and `μ - λ = δ`.
    pub fn from_c_delta(c: &Rational, delta: &Rational) -> Self {
        let s = c + int(1);
        DensityPair { lambda: (&s - delta) / int(2), mu: (&s + delta) / int(2) }
    }

    /// `δ = μ - λ`.
    pub fn delta(&self) -> Rational {
        &self.mu - &self.lambda
    }

    /// `c = λ + μ - 1`.
    pub fn c(&self) -> Rational {
        &self.lambda + &self.mu - int(1)
    }

    /// `γ = 3c²`.
    pub fn gamma(&self) -> Rational {
        let c = self.c();
        int(3) * &c * &c
    }

    /// `γ^{1/2} = √3·c`, the branch fixed throughout.
    pub fn gamma_half(&self) -> QSqrt3 {
        QSqrt3::new(int(0), self.c())
    }

    /// The conjugate pair `(1-μ, 1-λ)`: same `δ`, opposite `γ^{1/2}`.
    pub fn conjugate(&self) -> Self {
        DensityPair { lambda: int(1) - &self.mu, mu: int(1) - &self.lambda }
    }

    /// `(μ, λ)`: same `γ`, opposite `δ`.
    pub fn swapped(&self) -> Self {
        DensityPair { lambda: self.mu.clone(), mu: self.lambda.clone() }
    }
}

impl Serialize for DensityPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = BTreeMap::new();
        m.insert("lambda", fmt_rational(&self.lambda));
        m.insert("mu", fmt_rational(&self.mu));
        m.serialize(s)
    }
}

/// `N_l(n) = n + l/2 - 1`.
pub fn big_n(n: &Rational, l: usize) -> Rational {
    n + rat(l as i64, 2) - int(1)
}

/// Offset `n` and length `l` of a composition series, with the offsets of
/// the densities actually present.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesSpec {
    pub n: Rational,
    pub l: usize,
    pub pattern: Vec<usize>,
}

impl SeriesSpec {
    /// Full (non-lacunary) series of length `l`.
    pub fn new(n: Rational, l: usize) -> Self {
        SeriesSpec { n, l, pattern: (0..l).collect() }
    }

    /// Lacunary series; `l` is the spanning length `max(pattern) + 1`.
    pub fn with_pattern(n: Rational, pattern: Vec<usize>) -> Result<Self> {
        if pattern.first() != Some(&0) || pattern.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange(format!(
                "pattern must be strictly increasing and start at 0, got {pattern:?}"
            )));
        }
        let l = pattern.last().copied().unwrap_or(0) + 1;
        Ok(SeriesSpec { n, l, pattern })
    }

    pub fn is_lacunary(&self) -> bool {
        self.pattern.len() != self.l
    }

    /// `N_l(n)` for this spec's spanning length.
    pub fn big_n(&self) -> Rational {
        big_n(&self.n, self.l)
    }
}

/// Index of `B_{m+r,m}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoeffKey {
    pub m: Rational,
    pub r: u32,
}

impl CoeffKey {
    pub fn new(m: Rational, r: u32) -> Self {
        CoeffKey { m, r }
    }
}

/// The rational part `P` of `B_{m+r,m} = 3^{r/2} P`, written with
/// `c = λ + μ - 1` and `d = δ` in any ring.
fn b_core<T: Ring>(m: &T, c: &T, d: &T, r: u32) -> T {
    let one = T::one();
    let two_m = m.clone() + m.clone();
    let cm = c.clone() - m.clone();
    let mut head = pochhammer(&cm, r);
    if r < 2 {
        return head;
    }
    let rr = r as i64;
    let base = two_m.clone() + T::from_int(rr - 3);
    let mut sum = T::zero();
    for s in 0..=(r - 2) {
        let ss = s as i64;
        let binom = T::from_rational(&(factorial(r + 1) / (factorial(s) * factorial(r + 1 - s))));
        let bracket = c.clone() * T::from_int(rr - ss + 1)
            - d.clone() * T::from_int(rr - ss - 1)
            - (two_m.clone() + T::from_int(rr + ss - 1));
        sum = sum + binom * pochhammer(&base, r - s - 2) * pochhammer(&cm, s) * bracket;
    }
    let lead = (two_m + T::from_int(rr) - one) * T::from_rational(&rat(1, rr * rr - 1));
    head = head + lead * sum;
    head
}

fn check_gap(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::OutOfRange(format!("B_{{m+r,m}} needs r >= 2, got r = {r}")));
    }
    Ok(())
}

/// `B_{m+r,m}` as a polynomial in `g = γ^{1/2}` and `d = δ`.
pub fn b_symbolic(key: &CoeffKey) -> Result<GDPoly> {
    check_gap(key.r)?;
    let m = GDPoly::from_rational(&key.m);
    let c = GDPoly::g().scale(&QSqrt3::new(int(0), rat(1, 3)));
    let p = b_core(&m, &c, &GDPoly::d(), key.r);
    Ok(p.scale(&three_pow_half(key.r)))
}

/// Rational part `P = 3^{-r/2} B_{m+r,m}` at a density pair.
pub fn b_rational_part(key: &CoeffKey, p: &DensityPair) -> Result<Rational> {
    check_gap(key.r)?;
    Ok(b_core(&key.m, &p.c(), &p.delta(), key.r))
}

/// `B_{m+r,m}(γ, δ)` at a density pair.
pub fn b_eval(key: &CoeffKey, p: &DensityPair) -> Result<QSqrt3> {
    Ok(three_pow_half(key.r).scale(&b_rational_part(key, p)?))
}

/// `u ↦ B_{u+shift+r, u+shift}(γ, δ)` as an exact polynomial in `u`, with
/// `(λ, μ)` held fixed.
pub fn b_upoly(r: u32, p: &DensityPair, shift: &Rational) -> Result<UPoly> {
    check_gap(r)?;
    let m = UPoly::u() + UPoly::from_rational(shift);
    let c = UPoly::from_rational(&p.c());
    let d = UPoly::from_rational(&p.delta());
    let poly = b_core(&m, &c, &d, r);
    Ok(poly * UPoly::from_q(&three_pow_half(r)))
}

/// Non-resonant subdiagonal scalar `b_{m+r,m}`.
pub fn b_cmz(key: &CoeffKey, p: &DensityPair) -> Result<QSqrt3> {
    let r = key.r;
    let pr = b_rational_part(key, p)?;
    let m = &key.m;
    let rr = r as i64;
    let two_m = m * int(2);
    let den = int(12)
        * pochhammer(&(&two_m + int(2 * rr - 2)), r - 2)
        * (&two_m + int(rr - 1))
        * pochhammer(&(&two_m + int(rr - 3)), r - 2);
    if Ring::is_zero(&den) {
        return Err(Error::DenominatorVanishes { m: fmt_rational(m), r });
    }
    let sign = if r % 2 == 1 { int(1) } else { int(-1) };
    let num = sign * int(rr * rr - 1) * pochhammer(&(p.delta() - m), r) * pr;
    Ok(QSqrt3::from_rational(num / den))
}

/// `m ∈ -½ℤ⁺`?
fn is_neg_half_step(m: &Rational) -> bool {
    m < &int(0) && (is_integer(m) || is_half_odd(m))
}

/// Antidiagonal resonant scalar `a_{1-m,m}` for `m = 0` or `m ∈ -½ℤ⁺`.
pub fn a_res(m: &Rational, p: &DensityPair) -> Result<QSqrt3> {
    let delta = p.delta();
    if Ring::is_zero(m) {
        return Ok(QSqrt3::from_rational(-(delta * p.c()) / int(2)));
    }
    if !is_neg_half_step(m) {
        return Err(Error::OutOfRange(format!("a_{{1-m,m}} needs m in {{0}} ∪ -½Z⁺, got {m}")));
    }
    let k = to_i64(&(int(1) - m * int(2))).expect("1 - 2m is a positive integer") as u32;
    let f = factorial(k - 1);
    let val = -(pochhammer(&(&delta - m), k) * pochhammer(&(p.c() - m), k)) / (int(2) * &f * &f);
    Ok(QSqrt3::from_rational(val))
}

/// Resonant subdiagonal scalar `b̄_{m+r,m}`.
///
/// Covers `m ∈ -½ℤ⁺` with `2m + r ≥ 3`, `m = 0` with `r ≥ 3`, and the dual
/// range `m + r ∈ 1 + ½ℕ`, `2m + r ≤ -1` through the parity reflection.
pub fn bbar_res(key: &CoeffKey, p: &DensityPair) -> Result<QSqrt3> {
    let m = &key.m;
    let r = key.r;
    let rr = int(r as i64);
    let two_m_r = m * int(2) + &rr;
    let out_of_range =
        || Error::OutOfRange(format!("b̄_{{m+r,m}} undefined for m = {m}, r = {r}"));
    if !(is_integer(&(m * int(2)))) || r < 2 {
        return Err(out_of_range());
    }
    if Ring::is_zero(m) && r >= 3 {
        return bbar_zero(r, p);
    }
    if is_neg_half_step(m) && two_m_r >= int(3) {
        return bbar_neg(m, r, p);
    }
    let top = m + &rr;
    if two_m_r <= int(-1) && top >= int(1) {
        let dual = CoeffKey::new(int(1) - &top, r);
        let v = bbar_res(&dual, &p.swapped())?;
        return Ok(if r % 2 == 1 { v } else { -v });
    }
    Err(out_of_range())
}

fn derivative_at_zero(u: &UPoly) -> QSqrt3 {
    u.coeffs().get(1).cloned().unwrap_or_else(QSqrt3::zero)
}

fn bbar_neg(m: &Rational, r: u32, p: &DensityPair) -> Result<QSqrt3> {
    let rr = r as i64;
    let two_m = m * int(2);
    let low_gap = to_i64(&(int(1) - &two_m)).expect("integral") as u32;
    let high_gap = r + 1 - low_gap;
    let one_minus_m = int(1) - m;

    let whole = b_upoly(r, p, m)?;
    let upper = b_upoly(high_gap, p, &one_minus_m)?;
    let lower = b_upoly(low_gap, p, m)?;
    let deriv = derivative_at_zero(&(whole - upper * lower));

    let prod = b_eval(&CoeffKey::new(one_minus_m.clone(), high_gap), p)?
        * b_eval(&CoeffKey::new(m.clone(), low_gap), p)?;
    let t = &two_m + int(rr - 1);
    let corr = int(1) / (int(1) - &two_m) + rat(2 * rr, rr * rr - 1) - int(2) * &t / (&t * &t - int(1));
    let bracket = deriv.scale(&rat(1, 2)) - prod.scale(&corr);

    let fact_a = factorial(to_i64(&(&two_m + int(rr - 3))).expect("integral") as u32);
    let fact_b = factorial(to_i64(&(-&two_m)).expect("integral") as u32);
    let den = int(12) * pochhammer(&(&two_m + int(2 * rr - 2)), r - 2) * &t * fact_a * fact_b;
    let sign_exp = to_i64(&(&two_m + int(rr - 1))).expect("integral");
    let sign = if sign_exp.rem_euclid(2) == 0 { int(1) } else { int(-1) };
    let scalar = sign * int(rr * rr - 1) * pochhammer(&(p.delta() - m), r) / den;
    Ok(inv_three_pow_half(r) * bracket.scale(&scalar))
}

fn bbar_zero(r: u32, p: &DensityPair) -> Result<QSqrt3> {
    let rr = r as i64;
    let g = p.gamma_half();
    let whole = b_upoly(r, p, &int(0))?;
    let shifted = b_upoly(r - 1, p, &int(1))?;
    let deriv = derivative_at_zero(&(whole - UPoly::from_q(&g) * shifted));
    let br1 = b_eval(&CoeffKey::new(int(1), r - 1), p)?;
    let corr = int(1) + rat(2 * rr, rr * rr - 1) - rat(2 * (rr - 1), rr * rr - 2 * rr);
    let bracket = deriv.scale(&rat(1, 2)) - (g * br1).scale(&corr);
    let den = int(12) * pochhammer(&int(2 * rr - 2), r - 3) * factorial(r - 3);
    let sign = if r % 2 == 1 { int(1) } else { int(-1) };
    let scalar = sign * pochhammer(&p.delta(), r) / den;
    Ok(inv_three_pow_half(r) * bracket.scale(&scalar))
}

fn inv_three_pow_half(r: u32) -> QSqrt3 {
    three_pow_half(r).inv().expect("nonzero")
}

/// `H_k(λ,μ) = 4(3λ+k-2)(3μ-k-1) + (k-2)(k+1)`.
pub fn h_k(k: &Rational, p: &DensityPair) -> Rational {
    int(4) * (int(3) * &p.lambda + k - int(2)) * (int(3) * &p.mu - k - int(1))
        + (k - int(2)) * (k + int(1))
}

/// A pair with `λ + μ - 1 = c` on the zero locus of `B_{m+r,m}`, when that
/// locus is a graph over `c` (B linear in `δ` at fixed `c`).
pub fn pair_on_zero_locus(key: &CoeffKey, c: &Rational) -> Result<Option<DensityPair>> {
    let poly = b_symbolic(key)?;
    let g0 = QSqrt3::new(int(0), c.clone());
    let mut by_d: BTreeMap<u32, QSqrt3> = BTreeMap::new();
    for ((a, b), coef) in poly.terms() {
        let v = coef.clone() * pow_q(&g0, *a);
        *by_d.entry(*b).or_insert_with(QSqrt3::zero) += v;
    }
    by_d.retain(|_, v| !v.is_zero());
    let deg = by_d.keys().max().copied().unwrap_or(0);
    if deg != 1 {
        return Ok(None);
    }
    let c0 = by_d.get(&0).cloned().unwrap_or_else(QSqrt3::zero);
    let c1 = by_d[&1].clone();
    let delta = (-c0).checked_div(&c1)?;
    Ok(delta.as_rational().map(|d| DensityPair::from_c_delta(c, &d)))
}

fn pow_q(x: &QSqrt3, e: u32) -> QSqrt3 {
    (0..e).fold(QSqrt3::one(), |acc, _| acc * x.clone())
}
