//! Deciding equivalence of two symbol quotients with the same composition
//! series.
//!
//! Non-resonant cases of any length, and every supported lacunary pattern,
//! go through one constraint-graph solver ([`epsilon_solve`]). Resonant
//! cases follow their case-by-case vanishing conditions. The named theorem
//! forms in [`theorems`] restate the classical results and serve as
//! cross-checks.

mod tables;
pub mod theorems;

pub use tables::{known_tables, KnownTable, TableName, TableSample};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coefficients::{DensityPair, SeriesSpec};
use crate::error::{Error, Result};
use crate::invariants::{delta_g, invariant, svc_pairs, svc_profile, svc_value, InvariantKind, SvcEntry};
use crate::scalars::{fmt_rational, int, is_half_odd, is_integer, rat, to_i64, QSqrt3, Rational};

/// Resonance of a composition series.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ResonanceClass {
    NonResonant,
    IntegralResonant,
    HalfIntegralResonant,
}

/// Resonant iff `n ∈ {0, -½, -1, …, 2-l}`; lacunary series use their
/// spanning length.
pub fn resonance_class(spec: &SeriesSpec) -> ResonanceClass {
    resonance_of(&spec.n, spec.l)
}

fn resonance_of(n: &Rational, l: usize) -> ResonanceClass {
    let in_range = *n <= int(0) && *n >= int(2 - l as i64);
    if l < 2 || !in_range {
        ResonanceClass::NonResonant
    } else if is_integer(n) {
        ResonanceClass::IntegralResonant
    } else if is_half_odd(n) {
        ResonanceClass::HalfIntegralResonant
    } else {
        ResonanceClass::NonResonant
    }
}

/// Why an equivalence fails.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FailingCondition {
    /// `"vanishing"`, `"ratio"`, or the name of a mismatched invariant.
    pub kind: String,
    pub i: i64,
    pub j: i64,
    pub value_a: QSqrt3,
    pub value_b: QSqrt3,
}

/// Outcome of [`decide`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// `witness[i]` is the scalar `ε` on `F_{n+i}`, normalized so the lowest
    /// offset carries 1. `zeta_used` marks integral resonant series, where the
    /// antidiagonal scalar is free.
    Equivalent { witness: BTreeMap<i64, QSqrt3>, zeta_used: bool },
    Inequivalent { failing: FailingCondition },
    Unsupported { reason: String },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn is_inequivalent(&self) -> bool {
        matches!(self, Verdict::Inequivalent { .. })
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            Verdict::Equivalent { .. } => "Equivalent",
            Verdict::Inequivalent { .. } => "Inequivalent",
            Verdict::Unsupported { .. } => "Unsupported",
        }
    }

    /// Process exit code: 0, 1 or 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Equivalent { .. } => 0,
            Verdict::Inequivalent { .. } => 1,
            Verdict::Unsupported { .. } => 2,
        }
    }

    fn unsupported(reason: impl Into<String>) -> Self {
        Verdict::Unsupported { reason: reason.into() }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("outcome", self.outcome())?;
        match self {
            Verdict::Equivalent { witness, zeta_used } => {
                let w: BTreeMap<String, &QSqrt3> =
                    witness.iter().map(|(k, v)| (k.to_string(), v)).collect();
                m.serialize_entry("witness", &w)?;
                m.serialize_entry("zeta_used", zeta_used)?;
            }
            Verdict::Inequivalent { failing } => m.serialize_entry("failing_condition", failing)?,
            Verdict::Unsupported { reason } => m.serialize_entry("reason", reason)?,
        }
        m.end()
    }
}

/// One constraint `c·ε_i = c'·ε_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub i: i64,
    pub j: i64,
    pub c: QSqrt3,
    pub c_prime: QSqrt3,
    /// Exactly one side vanishes: the vanishing condition fails.
    pub infeasible: bool,
    /// The extra `δγ^{1/2}` edge of an integral resonant series.
    pub resonant: bool,
}

/// Offsets of the pattern and the constraints between them.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConstraintGraph {
    pub nodes: Vec<i64>,
    pub edges: Vec<Edge>,
}

impl ConstraintGraph {
    fn push(&mut self, i: i64, j: i64, c: QSqrt3, c_prime: QSqrt3, resonant: bool) {
        let infeasible = c.is_zero() != c_prime.is_zero();
        self.edges.push(Edge { i, j, c, c_prime, infeasible, resonant });
    }
}

/// Guard: no in-pattern pair of a non-resonant rational series realizes one
/// of the exceptional cocycle positions `(1,0)`, `(1,-4)`, `(5,0)`. The
/// irrational positions `½(7±√19, -5±√19)` cannot occur for rational `n`.
fn assert_no_cocycles(spec: &SeriesSpec) {
    if resonance_class(spec) != ResonanceClass::NonResonant {
        return;
    }
    for &i in &spec.pattern {
        for &j in &spec.pattern {
            if j >= i {
                continue;
            }
            let hi = &spec.n + int(i as i64);
            let lo = &spec.n + int(j as i64);
            for (a, b) in [(1, 0), (1, -4), (5, 0)] {
                assert!(
                    !(hi == int(a) && lo == int(b)),
                    "cocycle position ({a},{b}) reached at non-resonant n = {}",
                    spec.n
                );
            }
        }
    }
}

/// Edges for every in-pattern pair at gap 2, 3 or 4, plus the `δγ^{1/2}`
/// edge between the offsets of `F_0` and `F_1` for integral resonant series.
pub fn build_constraints(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> ConstraintGraph {
    assert_no_cocycles(spec);
    let mut g = ConstraintGraph {
        nodes: spec.pattern.iter().map(|&x| x as i64).collect(),
        edges: Vec::new(),
    };
    for (i, j) in svc_pairs(&spec.pattern) {
        g.push(i, j, svc_value(&spec.n, i, j, a), svc_value(&spec.n, i, j, b), false);
    }
    if resonance_class(spec) == ResonanceClass::IntegralResonant {
        let j = -to_i64(&spec.n).expect("integral");
        g.push(j + 1, j, delta_g(a), delta_g(b), true);
    }
    g
}

struct Forest {
    index: BTreeMap<i64, usize>,
    parent: Vec<usize>,
    /// `ε_x / ε_parent(x)`.
    ratio: Vec<QSqrt3>,
}

impl Forest {
    fn new(nodes: &[i64]) -> Self {
        Forest {
            index: nodes.iter().enumerate().map(|(k, &x)| (x, k)).collect(),
            parent: (0..nodes.len()).collect(),
            ratio: vec![QSqrt3::one(); nodes.len()],
        }
    }

    /// Root of `x` and `ε_x / ε_root`.
    fn find(&mut self, x: usize) -> (usize, QSqrt3) {
        let p = self.parent[x];
        if p == x {
            return (x, QSqrt3::one());
        }
        let (root, to_root) = self.find(p);
        let r = &self.ratio[x] * &to_root;
        self.parent[x] = root;
        self.ratio[x] = r.clone();
        (root, r)
    }

    /// Imposes `ε_i / ε_j = q`; returns false if this contradicts earlier edges.
    fn join(&mut self, i: i64, j: i64, q: &QSqrt3, check: bool) -> bool {
        let (ri, pi) = self.find(self.index[&i]);
        let (rj, pj) = self.find(self.index[&j]);
        if ri == rj {
            return !check || &pi / &pj == *q;
        }
        // ε_ri = ε_i / pi = q·ε_j / pi = q·pj/pi · ε_rj
        self.parent[ri] = rj;
        self.ratio[ri] = &(q * &pj) / &pi;
        true
    }

    fn witness(&mut self, nodes: &[i64]) -> BTreeMap<i64, QSqrt3> {
        let raw: Vec<(usize, QSqrt3)> = (0..nodes.len()).map(|k| self.find(k)).collect();
        let (root0, p0) = raw[0].clone();
        nodes
            .iter()
            .zip(raw)
            .map(|(&x, (root, p))| (x, if root == root0 { &p / &p0 } else { p }))
            .collect()
    }
}

/// Solves the graph for nonzero scalars `ε`.
///
/// Both-zero edges are skipped, one-zero edges fail with kind `"vanishing"`,
/// and inconsistent cycles fail with kind `"ratio"`. On success the witness
/// carries 1 at the first node.
pub fn epsilon_solve(g: &ConstraintGraph) -> std::result::Result<BTreeMap<i64, QSqrt3>, FailingCondition> {
    solve_graph(g, true)
}

fn solve_graph(g: &ConstraintGraph, check_cycles: bool) -> std::result::Result<BTreeMap<i64, QSqrt3>, FailingCondition> {
    let mut forest = Forest::new(&g.nodes);
    let fail = |e: &Edge, kind: &str| FailingCondition {
        kind: kind.into(),
        i: e.i,
        j: e.j,
        value_a: e.c.clone(),
        value_b: e.c_prime.clone(),
    };
    for e in &g.edges {
        if e.infeasible {
            return Err(fail(e, "vanishing"));
        }
        if e.c.is_zero() {
            continue;
        }
        let q = &e.c_prime / &e.c;
        if !forest.join(e.i, e.j, &q, check_cycles) {
            return Err(fail(e, "ratio"));
        }
    }
    Ok(forest.witness(&g.nodes))
}

/// Options for [`decide_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct DecideOptions {
    /// Admit the experimental lacunary pattern `{0,2,3,4,6}`.
    pub experimental: bool,
}

/// Decides equivalence of the series `spec` at the pairs `a` and `b`.
pub fn decide(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> Result<Verdict> {
    decide_with(spec, a, b, DecideOptions::default())
}

/// [`decide`] for two separately given specs; they must agree.
pub fn decide_pair(
    spec_a: &SeriesSpec,
    a: &DensityPair,
    spec_b: &SeriesSpec,
    b: &DensityPair,
) -> Result<Verdict> {
    if spec_a != spec_b {
        return Err(Error::SpecMismatch(format!(
            "(n, l, pattern) = ({}, {}, {:?}) vs ({}, {}, {:?})",
            spec_a.n, spec_a.l, spec_a.pattern, spec_b.n, spec_b.l, spec_b.pattern
        )));
    }
    decide(spec_a, a, b)
}

pub fn decide_with(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair, opts: DecideOptions) -> Result<Verdict> {
    if spec.l == 0 {
        return Err(Error::OutOfRange("length must be positive".into()));
    }
    if spec.is_lacunary() {
        return decide_lacunary(&spec.pattern, &spec.n, a, b, opts);
    }
    match resonance_class(spec) {
        ResonanceClass::NonResonant => Ok(from_solver(epsilon_solve(&build_constraints(spec, a, b)), false)),
        _ => Ok(decide_resonant(spec, a, b)),
    }
}

fn from_solver(r: std::result::Result<BTreeMap<i64, QSqrt3>, FailingCondition>, zeta_used: bool) -> Verdict {
    match r {
        Ok(witness) => Verdict::Equivalent { witness, zeta_used },
        Err(failing) => Verdict::Inequivalent { failing },
    }
}

fn vanishing_failure(entry_a: &SvcEntry, entry_b: &SvcEntry, kind: &str) -> Verdict {
    Verdict::Inequivalent {
        failing: FailingCondition {
            kind: kind.into(),
            i: entry_a.i,
            j: entry_a.j,
            value_a: entry_a.value.clone(),
            value_b: entry_b.value.clone(),
        },
    }
}

fn decide_resonant(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> Verdict {
    let n = &spec.n;
    let l = spec.l;
    let integral = resonance_class(spec) == ResonanceClass::IntegralResonant;
    let graph = build_constraints(spec, a, b);
    let forest = |g: &ConstraintGraph| from_solver(solve_graph(g, false), integral);

    // Cases settled by simultaneous vanishing alone.
    let svc_only = l <= 3
        || (l == 4 && (*n == rat(-1, 2) || *n == rat(-3, 2)));
    if svc_only {
        return forest(&graph);
    }
    if l == 4 && (*n == int(0) || *n == int(-2)) {
        let v = forest(&graph);
        if !v.is_equivalent() {
            return v;
        }
        // When the top-rung product vanishes the free scalar no longer helps
        // and one more quantity must vanish simultaneously.
        let (i, j, shift) = if *n == int(0) { (3, 1, 0) } else { (2, 0, 3) };
        let top_a = svc_value(n, i, j, a);
        if top_a.is_zero() {
            let extra = |p: &DensityPair| {
                p.gamma_half().scale(&crate::scalars::pochhammer(&(p.delta() + int(shift)), 4))
            };
            let (ea, eb) = (extra(a), extra(b));
            if ea.is_zero() != eb.is_zero() {
                let j0 = -to_i64(n).expect("integral");
                return Verdict::Inequivalent {
                    failing: FailingCondition { kind: "vanishing".into(), i: j0 + 1, j: j0, value_a: ea, value_b: eb },
                };
            }
        }
        return v;
    }
    if l == 4 && *n == int(-1) {
        return match epsilon_solve(&graph) {
            Ok(witness) => Verdict::Equivalent { witness, zeta_used: true },
            Err(f) if f.kind == "ratio" => {
                let ra = invariant(InvariantKind::R, n, a).expect("R").value;
                let rb = invariant(InvariantKind::R, n, b).expect("R").value;
                let zero = QSqrt3::zero;
                Verdict::Inequivalent {
                    failing: FailingCondition {
                        kind: "R".into(),
                        i: f.i,
                        j: f.j,
                        value_a: ra.unwrap_or_else(zero),
                        value_b: rb.unwrap_or_else(zero),
                    },
                }
            }
            Err(f) => Verdict::Inequivalent { failing: f },
        };
    }
    if l == 5 && *n == rat(-3, 2) {
        return from_solver(epsilon_solve(&graph), false);
    }
    Verdict::unsupported(format!(
        "resonant length {l} at n = {} is not classified (only the self-dual length-5 case is)",
        fmt_rational(n)
    ))
}

/// Supported lacunary patterns and their excluded offsets `n`.
pub fn lacunary_exclusions(pattern: &[usize]) -> Option<Vec<Rational>> {
    let v = |xs: &[(i64, i64)]| Some(xs.iter().map(|&(p, q)| rat(p, q)).collect());
    match pattern {
        [0, 2] => v(&[(0, 1), (-1, 1)]),
        [0, 2, 3] | [0, 1, 3] => v(&[(-2, 1), (0, 1)]),
        [0, 2, 4] | [0, 2, 3, 4] | [0, 1, 2, 4] => v(&[(-3, 1), (-5, 2), (-1, 2), (0, 1)]),
        [0, 2, 3, 5] | [0, 2, 3, 4, 5] | [0, 1, 2, 3, 5] => {
            v(&[(-4, 1), (-7, 2), (-3, 1), (-2, 1), (-1, 1), (-1, 2), (0, 1)])
        }
        [0, 2, 3, 4, 6] => Some((0..=10).map(|k| rat(-k, 2)).collect()),
        _ => None,
    }
}

/// Decides equivalence of two lacunary subquotients with the same pattern.
pub fn decide_lacunary(
    pattern: &[usize],
    n: &Rational,
    a: &DensityPair,
    b: &DensityPair,
    opts: DecideOptions,
) -> Result<Verdict> {
    let excluded = lacunary_exclusions(pattern).ok_or_else(|| Error::UnsupportedPattern(pattern.to_vec()))?;
    if pattern == [0, 2, 3, 4, 6] && !opts.experimental {
        return Err(Error::UnsupportedPattern(pattern.to_vec()));
    }
    if excluded.contains(n) {
        return Err(Error::ExcludedN { n: fmt_rational(n), pattern: pattern.to_vec() });
    }
    let spec = SeriesSpec::with_pattern(n.clone(), pattern.to_vec())?;
    let graph = build_constraints(&spec, a, b);
    if pattern == [0, 1, 2, 3, 5] {
        // Decided on the dual series: offsets i ↦ 5 - i, n ↦ -4 - n,
        // (λ, μ) ↦ (μ, λ). The witness is then read off the original graph.
        let dual_n = int(-4) - n;
        let v = decide_lacunary(&[0, 2, 3, 4, 5], &dual_n, &a.swapped(), &b.swapped(), opts)?;
        return Ok(match v {
            Verdict::Equivalent { .. } => from_solver(solve_graph(&graph, false), false),
            Verdict::Inequivalent { mut failing } => {
                (failing.i, failing.j) = (5 - failing.j, 5 - failing.i);
                Verdict::Inequivalent { failing }
            }
            other => other,
        });
    }
    Ok(from_solver(epsilon_solve(&graph), false))
}

/// The simultaneous-vanishing condition alone (no ratio conditions).
pub fn svc_holds(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> bool {
    svc_profile(spec, a)
        .iter()
        .zip(svc_profile(spec, b))
        .all(|(x, y)| x.is_zero == y.is_zero)
}

/// First entry where simultaneous vanishing fails.
pub fn svc_failure(spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> Option<Verdict> {
    svc_profile(spec, a)
        .iter()
        .zip(svc_profile(spec, b))
        .find(|(x, y)| x.is_zero != y.is_zero)
        .map(|(x, y)| vanishing_failure(x, &y, "vanishing"))
}
