//! Brute-force oracle: truncated pseudodifferential symbols, the action of
//! polynomial vector fields on them, the projective quantization built from
//! Casimir eigenspaces, and direct extraction of the coefficients it
//! implies.
//!
//! Nothing here uses the closed forms of [`crate::coefficients`]; agreement
//! between the two is the point.

pub mod checks;
pub mod linalg;
mod pq;

pub use pq::{
    beta_eval, brute_force_intertwiner, build_pq, build_pq_linear, build_pq_with, recover_b, recover_b_from, Quantization,
    DEFAULT_DEGREE, DEFAULT_GEN_CAP,
};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coefficients::DensityPair;
use crate::error::{Error, Result};
use crate::scalars::{gen_binomial, int, pochhammer, Rational};

/// The vector field `x^p ∂`: `p = 0` is translation, `p = 1` the Euler
/// field, `p = 2` the top of `sl(2)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VecFieldGen {
    pub p: u32,
}

impl VecFieldGen {
    pub fn new(p: u32) -> Self {
        VecFieldGen { p }
    }
}

/// `dx^δ Σ_i f_i(x) ∂^{k-i}` with polynomial `f_i`, kept for levels
/// `i < depth`. Keys are `(level, monomial degree)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSymbol {
    pub params: DensityPair,
    pub k: Rational,
    pub depth: usize,
    /// Nominal degree window; entries may exceed it, nothing is cut.
    pub poly_degree: u32,
    coeffs: BTreeMap<(usize, u32), Rational>,
}

impl TruncatedSymbol {
    pub fn new(params: DensityPair, k: Rational, depth: usize, poly_degree: u32) -> Self {
        TruncatedSymbol { params, k, depth, poly_degree, coeffs: BTreeMap::new() }
    }

    /// Same shape, no terms.
    pub fn empty_like(&self) -> Self {
        TruncatedSymbol::new(self.params.clone(), self.k.clone(), self.depth, self.poly_degree)
    }

    /// `c·x^a ∂^{k-level}`.
    pub fn monomial(&self, level: usize, a: u32, c: Rational) -> Self {
        let mut t = self.empty_like();
        t.add_term(level, a, c);
        t
    }

    pub fn get(&self, level: usize, a: u32) -> Rational {
        self.coeffs.get(&(level, a)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·x^a` at `level`; terms at or beyond `depth` are dropped.
    pub fn add_term(&mut self, level: usize, a: u32, c: Rational) {
        if level >= self.depth || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((level, a)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(level, a));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, u32), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = self.empty_like();
        for (&(i, a), c) in &self.coeffs {
            out.add_term(i, a, c * s);
        }
        out
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &Self, s: &Rational) -> Self {
        let mut out = self.clone();
        for (&(i, a), c) in &other.coeffs {
            out.add_term(i, a, c * s);
        }
        out
    }

    /// `δ - k`, the offset `n` of the composition series.
    pub fn n(&self) -> Rational {
        self.params.delta() - &self.k
    }
}

/// `L_{λμ}(x^e ∂)` on a truncated symbol.
///
/// A term `f ∂^r` maps to `(g f' + (δ-r) g' f) ∂^r - f Σ_{s≥1} C(r,s)
/// (λ + (r-s)/(s+1)) g^{(s+1)} ∂^{r-s}`, with `g = x^e`. Degrees are exact.
pub fn lie_action(gen: VecFieldGen, t: &TruncatedSymbol) -> TruncatedSymbol {
    let e = gen.p;
    let lambda = &t.params.lambda;
    let delta = t.params.delta();
    let mut out = t.empty_like();
    for (&(i, a), c) in &t.coeffs {
        let r = &t.k - int(i as i64);
        let same = int(a as i64) + (&delta - &r) * int(e as i64);
        if a + e >= 1 {
            out.add_term(i, a + e - 1, c * same);
        }
        for s in 1..e {
            let gder = pochhammer(&int(e as i64), s + 1);
            let shift = (&r - int(s as i64)) / int(s as i64 + 1);
            let co = -(gen_binomial(&r, s) * (lambda + shift) * gder);
            out.add_term(i + s as usize, a + e - s - 1, c * co);
        }
    }
    out
}

/// `L_ν(x^e ∂)` on the density `dx^ν x^a`, as a coefficient vector of
/// length `D + 1`: the single entry `(a + νe)` at degree `a + e - 1`.
pub fn density_action(nu: &Rational, gen: VecFieldGen, a: u32, max_degree: u32) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); max_degree as usize + 1];
    let e = gen.p;
    if a + e >= 1 && a + e - 1 <= max_degree {
        v[(a + e - 1) as usize] = int(a as i64) + nu * int(e as i64);
    }
    v
}

/// The Casimir `(x∂)² - x∂ - (x²∂)∂`.
pub fn casimir(t: &TruncatedSymbol) -> TruncatedSymbol {
    let l0 = VecFieldGen::new(0);
    let l1 = VecFieldGen::new(1);
    let l2 = VecFieldGen::new(2);
    let a = lie_action(l1, &lie_action(l1, t));
    let b = lie_action(l1, t);
    let c = lie_action(l2, &lie_action(l0, t));
    a.add_scaled(&b, &int(-1)).add_scaled(&c, &int(-1))
}

/// Conjugation into `Ψ^k_{1-μ,1-λ}`.
///
/// `(f ∂^r)* = ∂^r ∘ f` up to the phase `e^{πir}`; the global phase
/// `e^{πik}` is dropped and the relative sign `(-1)^level` kept.
pub fn conjugate_symbol(t: &TruncatedSymbol) -> TruncatedSymbol {
    let params = t.params.conjugate();
    let mut out = TruncatedSymbol::new(params, t.k.clone(), t.depth, t.poly_degree);
    for (&(i, a), c) in &t.coeffs {
        let r = &t.k - int(i as i64);
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        for s in 0..=a {
            let co = gen_binomial(&r, s) * pochhammer(&int(a as i64), s);
            out.add_term(i + s as usize, a - s, c * &sign * co);
        }
    }
    out
}

/// Which side `d = dx ∂` is composed on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `T ↦ d ∘ T`, from `Ψ^k_{λ,0}` to `Ψ^{k+1}_{λ,1}`.
    Left,
    /// `T ↦ T ∘ d`, from `Ψ^k_{1,μ}` to `Ψ^{k+1}_{0,μ}`.
    Right,
}

/// Composition with the de Rham differential.
pub fn de_rham_compose(side: Side, t: &TruncatedSymbol) -> Result<TruncatedSymbol> {
    let p = &t.params;
    let k = &t.k + int(1);
    match side {
        Side::Left => {
            if !p.mu.is_zero() {
                return Err(Error::WeightMismatch(format!("left composition needs μ = 0, got {}", p.mu)));
            }
            let params = DensityPair::new(p.lambda.clone(), int(1));
            let mut out = TruncatedSymbol::new(params, k, t.depth, t.poly_degree);
            for (&(i, a), c) in &t.coeffs {
                out.add_term(i, a, c.clone());
                if a > 0 {
                    out.add_term(i + 1, a - 1, c * int(a as i64));
                }
            }
            Ok(out)
        }
        Side::Right => {
            if p.lambda != int(1) {
                return Err(Error::WeightMismatch(format!("right composition needs λ = 1, got {}", p.lambda)));
            }
            let params = DensityPair::new(int(0), p.mu.clone());
            let mut out = TruncatedSymbol::new(params, k, t.depth, t.poly_degree);
            for (&(i, a), c) in &t.coeffs {
                out.add_term(i, a, c.clone());
            }
            Ok(out)
        }
    }
}

/// Sparse matrix indexed by `(row level, row degree)` and
/// `(column level, column degree)`; block `(i, j)` maps level `j` to level `i`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BlockMatrix {
    entries: BTreeMap<(usize, u32, usize, u32), Rational>,
}

impl BlockMatrix {
    pub fn set(&mut self, row: (usize, u32), col: (usize, u32), v: Rational) {
        if !v.is_zero() {
            self.entries.insert((row.0, row.1, col.0, col.1), v);
        }
    }

    pub fn get(&self, row: (usize, u32), col: (usize, u32)) -> Rational {
        self.entries.get(&(row.0, row.1, col.0, col.1)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries of block `(i, j)` keyed by `(row degree, column degree)`.
    pub fn block(&self, i: usize, j: usize) -> BTreeMap<(u32, u32), Rational> {
        self.entries
            .iter()
            .filter(|(&(ri, _, cj, _), _)| ri == i && cj == j)
            .map(|(&(_, b, _, a), v)| ((b, a), v.clone()))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, u32, usize, u32), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn sym(lambda: Rational, mu: Rational, k: Rational) -> TruncatedSymbol {
        TruncatedSymbol::new(DensityPair::new(lambda, mu), k, 4, 8)
    }

    #[test]
    fn translation_lowers_degree() {
        let t = sym(rat(1, 3), rat(2, 5), rat(7, 4)).monomial(0, 1, int(1));
        let out = lie_action(VecFieldGen::new(0), &t);
        assert_eq!(out, t.monomial(0, 0, int(1)));
    }

    #[test]
    fn euler_weight() {
        let base = sym(rat(1, 3), rat(2, 5), rat(7, 4));
        let t = base.monomial(2, 3, int(1));
        let out = lie_action(VecFieldGen::new(1), &t);
        let w = int(3) + base.n() + int(2);
        assert_eq!(out, t.scale(&w));
    }

    #[test]
    fn casimir_diagonal() {
        let base = sym(rat(1, 3), rat(2, 5), rat(7, 4));
        for level in 0..3 {
            let t = base.monomial(level, 2, int(1));
            let q = casimir(&t);
            let nu = base.n() + int(level as i64);
            assert_eq!(q.get(level, 2), &nu * &nu - &nu);
        }
    }
}
