//! Projective quantization by Casimir-eigenspace correction, the induced
//! action on the graded module, and extraction of `b` coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coefficients::{DensityPair, SeriesSpec};
use crate::error::{Error, Result};
use crate::scalars::{factorial, fmt_rational, int, is_integer, pochhammer, to_i64, QSqrt3, Rational};

use super::linalg::{nullspace, solve_unique};
use super::{casimir, density_action, lie_action, BlockMatrix, TruncatedSymbol, VecFieldGen};

/// Default monomial degree window.
pub const DEFAULT_DEGREE: u32 = 8;
/// Default largest generator exponent.
pub const DEFAULT_GEN_CAP: u32 = 6;

/// The map `⊕_j F_{n+j} → SQ^{k,l}_{λμ}` given column by column: `lifts[(j, a)]`
/// is the image of `dx^{n+j} x^a`.
#[derive(Clone, Debug)]
pub struct Quantization {
    pub spec: SeriesSpec,
    pub params: DensityPair,
    pub k: Rational,
    pub degree: u32,
    pub gen_cap: u32,
    lifts: BTreeMap<(usize, u32), TruncatedSymbol>,
}

fn kappa(n: &Rational, i: usize) -> Rational {
    let nu = n + int(i as i64);
    &nu * (&nu - int(1))
}

fn check_nonresonant(spec: &SeriesSpec) -> Result<()> {
    for i in 0..spec.l {
        for j in 0..i {
            if int(2) * &spec.n + int((i + j) as i64) == int(1) {
                return Err(Error::ResonantInput(format!(
                    "Casimir eigenvalues of levels {j} and {i} coincide at n = {}",
                    fmt_rational(&spec.n)
                )));
            }
        }
    }
    Ok(())
}

fn window(spec: &SeriesSpec, degree: u32, gen_cap: u32) -> Result<()> {
    if spec.l == 0 {
        return Err(Error::TruncationTooSmall("series of length 0".into()));
    }
    if gen_cap < 2 {
        return Err(Error::TruncationTooSmall(format!("generator cap {gen_cap} misses the projective generators")));
    }
    let _ = degree;
    Ok(())
}

/// [`build_pq_with`] at the default generator cap.
pub fn build_pq(spec: &SeriesSpec, p: &DensityPair, degree: u32) -> Result<Quantization> {
    build_pq_with(spec, p, degree, DEFAULT_GEN_CAP)
}

/// Corrects each `x^a ∂^{k-j}` level by level into the
/// `(n+j)(n+j-1)`-eigenspace of the Casimir. Lifts are kept up to degree
/// `degree + gen_cap` so that `π(x^e ∂)` can be inverted on the window.
pub fn build_pq_with(spec: &SeriesSpec, p: &DensityPair, degree: u32, gen_cap: u32) -> Result<Quantization> {
    window(spec, degree, gen_cap)?;
    check_nonresonant(spec)?;
    let k = p.delta() - &spec.n;
    let depth = spec.l;
    let base = TruncatedSymbol::new(p.clone(), k.clone(), depth, degree);
    let mut lifts = BTreeMap::new();
    for j in 0..depth {
        let kj = kappa(&spec.n, j);
        for a in 0..=degree + gen_cap {
            let mut t = base.monomial(j, a, int(1));
            for s in 1..depth - j {
                let q = casimir(&t);
                let diff = &kj - kappa(&spec.n, j + s);
                for (&(lvl, b), c) in q.terms() {
                    if lvl == j + s {
                        t.add_term(lvl, b, c / &diff);
                    }
                }
            }
            if casimir(&t) != t.scale(&kj) {
                return Err(Error::OracleInvariant(format!("lift of ({j}, {a}) is not a Casimir eigenvector")));
            }
            lifts.insert((j, a), t);
        }
    }
    let pq = Quantization { spec: spec.clone(), params: p.clone(), k, degree, gen_cap, lifts };
    pq.check_projective()?;
    Ok(pq)
}

/// Second construction: solve `∂`- and `x²∂`-equivariance directly for the
/// unknown corrections, degree by degree. Agreement with [`build_pq`] is
/// the uniqueness check.
pub fn build_pq_linear(spec: &SeriesSpec, p: &DensityPair, degree: u32, gen_cap: u32) -> Result<Quantization> {
    window(spec, degree, gen_cap)?;
    check_nonresonant(spec)?;
    let k = p.delta() - &spec.n;
    let depth = spec.l;
    let top = degree + gen_cap;
    let base = TruncatedSymbol::new(p.clone(), k.clone(), depth, degree);
    let mut lifts = BTreeMap::new();
    for j in 0..depth {
        // Unknown c[a,t] multiplies x^{a-t} at level j+t.
        let mut index = BTreeMap::new();
        for a in 0..=top {
            for t in 1..=(a as usize).min(depth - 1 - j) {
                let next = index.len();
                index.insert((a, t), next);
            }
        }
        let nvar = index.len();
        // Each T_a as (constant part, linear part) per (level, degree).
        let column = |a: u32| -> Vec<(usize, u32, Option<usize>)> {
            let mut v = vec![(j, a, None)];
            for t in 1..=(a as usize).min(depth - 1 - j) {
                v.push((j + t, a - t as u32, Some(index[&(a, t)])));
            }
            v
        };
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let nu = &spec.n + int(j as i64);
        let mut equation = |gen: VecFieldGen, a: u32, target: Option<(u32, Rational)>| {
            let mut acc: BTreeMap<(usize, u32), (Vec<Rational>, Rational)> = BTreeMap::new();
            let mut push = |lvl: usize, b: u32, var: Option<usize>, c: Rational| {
                let e = acc.entry((lvl, b)).or_insert_with(|| (vec![Rational::zero(); nvar], Rational::zero()));
                match var {
                    Some(v) => e.0[v] += c,
                    None => e.1 += c,
                }
            };
            for (lvl, b, var) in column(a) {
                let image = lie_action(gen, &base.monomial(lvl, b, int(1)));
                for (&(l2, b2), c) in image.terms() {
                    push(l2, b2, var, c.clone());
                }
            }
            if let Some((ta, s)) = target {
                for (lvl, b, var) in column(ta) {
                    push(lvl, b, var, -s.clone());
                }
            }
            for (_, (coeffs, constant)) in acc {
                rows.push(coeffs);
                rhs.push(-constant);
            }
        };
        for a in 0..=top {
            let down = if a > 0 { Some((a - 1, int(a as i64))) } else { None };
            equation(VecFieldGen::new(0), a, down);
            if a < top {
                equation(VecFieldGen::new(2), a, Some((a + 1, int(a as i64) + int(2) * &nu)));
            }
        }
        let sol = if nvar == 0 {
            Vec::new()
        } else {
            solve_unique(&rows, &rhs, nvar).ok_or_else(|| {
                Error::TruncationTooSmall(format!("equivariance system at level {j} has no unique solution"))
            })?
        };
        for a in 0..=top {
            let mut t = base.empty_like();
            for (lvl, b, var) in column(a) {
                t.add_term(lvl, b, var.map_or_else(Rational::one, |v| sol[v].clone()));
            }
            lifts.insert((j, a), t);
        }
    }
    let pq = Quantization { spec: spec.clone(), params: p.clone(), k, degree, gen_cap, lifts };
    pq.check_projective()?;
    Ok(pq)
}

impl Quantization {
    pub fn depth(&self) -> usize {
        self.spec.l
    }

    /// Image of `dx^{n+j} x^a`.
    pub fn lift(&self, j: usize, a: u32) -> Option<&TruncatedSymbol> {
        self.lifts.get(&(j, a))
    }

    /// The quantization map on the window `a ≤ degree`.
    pub fn matrix(&self) -> BlockMatrix {
        let mut m = BlockMatrix::default();
        for (&(j, a), t) in &self.lifts {
            if a > self.degree {
                continue;
            }
            for (&(i, b), c) in t.terms() {
                m.set((i, b), (j, a), c.clone());
            }
        }
        m
    }

    /// Both constructions produce the same columns.
    pub fn same_lifts(&self, other: &Quantization) -> bool {
        self.lifts == other.lifts
    }

    /// Coordinates of a symbol in the graded basis, by back-substitution.
    pub fn inverse(&self, t: &TruncatedSymbol) -> Result<BTreeMap<(usize, u32), Rational>> {
        let mut rest = t.clone();
        let mut out = BTreeMap::new();
        for level in 0..self.depth() {
            let here: Vec<(u32, Rational)> =
                rest.terms().filter(|(&(i, _), _)| i == level).map(|(&(_, b), c)| (b, c.clone())).collect();
            for (b, c) in here {
                let lift = self.lift(level, b).ok_or_else(|| {
                    Error::TruncationTooSmall(format!("no lift for degree {b} at level {level}; raise the degree window"))
                })?;
                rest = rest.add_scaled(lift, &-c.clone());
                out.insert((level, b), c);
            }
        }
        debug_assert!(rest.is_zero());
        Ok(out)
    }

    /// `π(x^e ∂) = PQ⁻¹ ∘ L(x^e ∂) ∘ PQ` on columns `a ≤ degree`.
    pub fn pi(&self, gen: VecFieldGen) -> Result<BlockMatrix> {
        if gen.p > self.gen_cap {
            return Err(Error::OutOfRange(format!("generator x^{}∂ beyond cap {}", gen.p, self.gen_cap)));
        }
        let mut m = BlockMatrix::default();
        for (&(j, a), t) in &self.lifts {
            if a > self.degree {
                continue;
            }
            for ((i, b), c) in self.inverse(&lie_action(gen, t))? {
                m.set((i, b), (j, a), c);
            }
        }
        Ok(m)
    }

    /// On `sl(2)` the quantization must intertwine with the direct sum of
    /// density actions.
    fn check_projective(&self) -> Result<()> {
        for e in 0..=2 {
            let gen = VecFieldGen::new(e);
            let pi = self.pi(gen)?;
            let mut expected = BlockMatrix::default();
            for j in 0..self.depth() {
                let nu = &self.spec.n + int(j as i64);
                for a in 0..=self.degree {
                    let v = density_action(&nu, gen, a, self.degree + e);
                    for (b, c) in v.into_iter().enumerate() {
                        expected.set((j, b as u32), (j, a), c);
                    }
                }
            }
            if pi != expected {
                return Err(Error::OracleInvariant(format!("quantization is not equivariant for x^{e}∂")));
            }
        }
        Ok(())
    }
}

/// `β(x^e ∂)` as an operator `F_{nu_src} → F_{nu_tgt}` on monomials
/// `x^a`, `a ≤ degree`, stored in block `(0, 0)`.
///
/// Built as `6/(e-3)! · L(x²∂)^{e-3}(dx^δ ∂^{δ-2})` in the module of
/// differential operators; zero for the projective generators `e ≤ 2`.
pub fn beta_eval(nu_src: &Rational, nu_tgt: &Rational, gen: VecFieldGen, degree: u32) -> Result<BlockMatrix> {
    let delta = nu_tgt - nu_src;
    if !is_integer(&delta) || delta < int(2) {
        return Err(Error::Domain(format!("β needs an integral weight gap ≥ 2, got {}", fmt_rational(&delta))));
    }
    let mut out = BlockMatrix::default();
    let e = gen.p;
    if e <= 2 {
        return Ok(out);
    }
    let d = to_i64(&delta).expect("integral") as usize;
    let k = int(d as i64 - 2);
    let params = DensityPair::new(nu_src.clone(), nu_tgt.clone());
    let mut t = TruncatedSymbol::new(params, k, d - 1, degree).monomial(0, 0, int(1));
    for _ in 0..e - 3 {
        t = lie_action(VecFieldGen::new(2), &t);
    }
    let t = t.scale(&(int(6) / factorial(e - 3)));
    for a in 0..=degree {
        let mut col: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&(i, b), c) in t.terms() {
            let order = (d - 2 - i) as u32;
            if order > a {
                continue;
            }
            let v = c * pochhammer(&int(a as i64), order);
            *col.entry(b + a - order).or_insert_with(Rational::zero) += v;
        }
        for (row, v) in col {
            out.set((0, row), (0, a), v);
        }
    }
    Ok(out)
}

/// `b_{n+i,n+j}` read off `π(x^{i-j+1}∂)` as the ratio of its `(i, j)`
/// block to `β_{n+j,n+i}`.
///
/// Fails with [`Error::ProportionalityViolated`] if the block is not a
/// multiple of `β` or if block `(j+1, j)` is nonzero.
pub fn recover_b(spec: &SeriesSpec, p: &DensityPair, i: usize, j: usize, degree: u32) -> Result<QSqrt3> {
    if i < j + 2 || i >= spec.l {
        return Err(Error::OutOfRange(format!("block ({i}, {j}) needs j + 2 ≤ i < {}", spec.l)));
    }
    let e = (i - j + 1) as u32;
    let pq = build_pq_with(spec, p, degree, DEFAULT_GEN_CAP.max(e))?;
    recover_b_from(&pq, i, j)
}

/// [`recover_b`] on an already built quantization.
pub fn recover_b_from(pq: &Quantization, i: usize, j: usize) -> Result<QSqrt3> {
    let e = (i - j + 1) as u32;
    let gen = VecFieldGen::new(e);
    let pi = pq.pi(gen)?;
    let sub = pi.block(j + 1, j);
    if !sub.is_empty() {
        return Err(Error::ProportionalityViolated { i: j + 1, j, detail: format!("{} nonzero entries", sub.len()) });
    }
    let n = &pq.spec.n;
    let beta = beta_eval(&(n + int(j as i64)), &(n + int(i as i64)), gen, pq.degree)?.block(0, 0);
    let block = pi.block(i, j);
    let mut ratio: Option<Rational> = None;
    for (key, v) in &block {
        match beta.get(key) {
            None => {
                return Err(Error::ProportionalityViolated {
                    i,
                    j,
                    detail: format!("entry {key:?} is nonzero where β vanishes"),
                })
            }
            Some(bv) => {
                let r = v / bv;
                match &ratio {
                    Some(r0) if *r0 != r => {
                        return Err(Error::ProportionalityViolated {
                            i,
                            j,
                            detail: format!("ratios {} and {} differ", fmt_rational(r0), fmt_rational(&r)),
                        })
                    }
                    _ => ratio = Some(r),
                }
            }
        }
    }
    if beta.is_empty() {
        return Err(Error::TruncationTooSmall(format!("β vanishes on the window for block ({i}, {j})")));
    }
    Ok(QSqrt3::from_rational(ratio.unwrap_or_else(Rational::zero)))
}

/// Searches for a block-scalar `ε` with `ε ∘ π_A(X) = π_B(X) ∘ ε` for all
/// generators up to `gen_cap`. Returns `ε` normalized to `ε_0 = 1`, or
/// `None` when no solution has all entries nonzero.
pub fn brute_force_intertwiner(
    spec: &SeriesSpec,
    pa: &DensityPair,
    pb: &DensityPair,
    degree: u32,
    gen_cap: u32,
) -> Result<Option<Vec<Rational>>> {
    let qa = build_pq_with(spec, pa, degree, gen_cap)?;
    let qb = build_pq_with(spec, pb, degree, gen_cap)?;
    let l = spec.l;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in 3..=gen_cap {
        let gen = VecFieldGen::new(e);
        let (ma, mb) = (qa.pi(gen)?, qb.pi(gen)?);
        let mut keys: Vec<(usize, u32, usize, u32)> = ma.entries().map(|(k, _)| *k).collect();
        keys.extend(mb.entries().map(|(k, _)| *k));
        keys.sort();
        keys.dedup();
        for (i, b, j, a) in keys {
            let mut row = vec![Rational::zero(); l];
            row[i] += ma.get((i, b), (j, a));
            row[j] -= mb.get((i, b), (j, a));
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let basis = nullspace(&rows, l);
    if basis.is_empty() {
        return Ok(None);
    }
    // A generic combination has no zero entry if any member of the span has none.
    for t in 1..=(2 * l as i64 + 2) {
        let mut eps = vec![Rational::zero(); l];
        let mut w = int(1);
        for v in &basis {
            for (x, y) in eps.iter_mut().zip(v) {
                *x += &w * y;
            }
            w *= int(t);
        }
        if eps.iter().all(|x| !x.is_zero()) {
            let e0 = eps[0].clone();
            return Ok(Some(eps.into_iter().map(|x| x / &e0).collect()));
        }
    }
    Ok(None)
}
