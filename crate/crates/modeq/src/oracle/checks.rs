//! Grid sweeps comparing the oracle with the closed forms and the decider.

use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{b_cmz, CoeffKey, DensityPair, SeriesSpec};
use crate::equivalence::decide;
use crate::error::Error;
use crate::scalars::{fmt_rational, int, rat, Rational};

use super::pq::{brute_force_intertwiner, build_pq_linear, build_pq_with, recover_b_from};

/// Which comparison to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// Recovered `b` against the closed form.
    Cmz,
    /// Eigenspace quantization against the linear-solve one.
    Pq,
    /// Brute-force intertwiner against the decider.
    Intertwiner,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Small,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Outcome of one grid cell.
#[derive(Clone, Debug, Serialize)]
pub struct CellResult {
    pub cell: String,
    pub status: Status,
    pub detail: String,
}

/// A full sweep.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub grid: Grid,
    pub degree: u32,
    pub gen_cap: u32,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_failure: Option<CellResult>,
    pub cells: Vec<CellResult>,
}

impl CheckReport {
    fn new(check: Check, grid: Grid, degree: u32, gen_cap: u32, cells: Vec<CellResult>) -> Self {
        let count = |s| cells.iter().filter(|c| c.status == s).count();
        let first_failure = cells.iter().find(|c| c.status == Status::Fail).cloned();
        CheckReport {
            check,
            grid,
            degree,
            gen_cap,
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skip),
            first_failure,
            cells,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn pairs(grid: Grid) -> Vec<DensityPair> {
    let all = [(1, 3, 5, 2), (-2, 3, 7, 4), (1, 2, -1, 5), (3, 1, 1, 4), (-3, 2, 2, 3)];
    let take = if grid == Grid::Small { 3 } else { all.len() };
    all[..take].iter().map(|&(a, b, c, d)| DensityPair::new(rat(a, b), rat(c, d))).collect()
}

fn offsets(grid: Grid) -> Vec<Rational> {
    match grid {
        Grid::Small => vec![rat(2, 7), rat(1, 5)],
        Grid::Full => vec![rat(2, 7), rat(1, 5), rat(-1, 3), rat(3, 2), rat(-7, 4)],
    }
}

fn label(spec: &SeriesSpec, p: &DensityPair) -> String {
    format!("n={} l={} λ={} μ={}", fmt_rational(&spec.n), spec.l, fmt_rational(&p.lambda), fmt_rational(&p.mu))
}

/// `recover_b = b_cmz` for every block `(i, j)` with gap 2 to 4, over
/// lengths 3 to 5.
pub fn cmz_cells(spec: &SeriesSpec, p: &DensityPair, degree: u32, gen_cap: u32) -> Vec<CellResult> {
    let base = label(spec, p);
    let pq = match build_pq_with(spec, p, degree, gen_cap) {
        Ok(q) => q,
        Err(e @ Error::ResonantInput(_)) => {
            return vec![CellResult { cell: base, status: Status::Skip, detail: e.to_string() }]
        }
        Err(e) => return vec![CellResult { cell: base, status: Status::Fail, detail: e.to_string() }],
    };
    let mut out = Vec::new();
    for i in 2..spec.l {
        for j in 0..=i - 2 {
            if i - j > 4 || (i - j + 1) as u32 > gen_cap {
                continue;
            }
            let cell = format!("{base} block=({i},{j})");
            let key = CoeffKey::new(&spec.n + int(j as i64), (i - j) as u32);
            let res = recover_b_from(&pq, i, j).and_then(|got| Ok((got, b_cmz(&key, p)?)));
            let (status, detail) = match res {
                Ok((got, want)) if got == want => (Status::Pass, format!("b = {got}")),
                Ok((got, want)) => (Status::Fail, format!("recovered {got}, closed form {want}")),
                Err(e) => (Status::Fail, e.to_string()),
            };
            out.push(CellResult { cell, status, detail });
        }
    }
    out
}

/// The two quantization constructions agree; resonant specs are skipped.
pub fn pq_cell(spec: &SeriesSpec, p: &DensityPair, degree: u32, gen_cap: u32) -> CellResult {
    let cell = label(spec, p);
    let (status, detail) = match (build_pq_with(spec, p, degree, gen_cap), build_pq_linear(spec, p, degree, gen_cap)) {
        (Ok(a), Ok(b)) if a.same_lifts(&b) => (Status::Pass, "constructions agree".to_string()),
        (Ok(_), Ok(_)) => (Status::Fail, "constructions differ".to_string()),
        (Err(e @ Error::ResonantInput(_)), _) => (Status::Skip, e.to_string()),
        (Err(e), _) | (_, Err(e)) => (Status::Fail, e.to_string()),
    };
    CellResult { cell, status, detail }
}

/// The decider and the brute-force intertwiner search agree.
pub fn intertwiner_cell(
    spec: &SeriesSpec,
    a: &DensityPair,
    b: &DensityPair,
    degree: u32,
    gen_cap: u32,
) -> CellResult {
    let cell = format!(
        "{} vs λ={} μ={}",
        label(spec, a),
        fmt_rational(&b.lambda),
        fmt_rational(&b.mu)
    );
    let verdict = match decide(spec, a, b) {
        Ok(v) => v,
        Err(e) => return CellResult { cell, status: Status::Fail, detail: e.to_string() },
    };
    if !verdict.is_equivalent() && !verdict.is_inequivalent() {
        return CellResult { cell, status: Status::Skip, detail: "decider unsupported".into() };
    }
    let (status, detail) = match brute_force_intertwiner(spec, a, b, degree, gen_cap) {
        Ok(found) if found.is_some() == verdict.is_equivalent() => {
            (Status::Pass, format!("both {}", verdict.outcome()))
        }
        Ok(found) => (
            Status::Fail,
            format!("decider {}, oracle {}", verdict.outcome(), if found.is_some() { "found ε" } else { "no ε" }),
        ),
        Err(e @ Error::ResonantInput(_)) => (Status::Skip, e.to_string()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    CellResult { cell, status, detail }
}

/// Pairs for the intertwiner sweep: identical, conjugate, de Rham and
/// unrelated modules.
fn intertwiner_pairs(grid: Grid) -> Vec<(SeriesSpec, DensityPair, DensityPair)> {
    let mut out = Vec::new();
    let ps = pairs(grid);
    for l in 3..=5 {
        for n in offsets(grid) {
            let spec = SeriesSpec::new(n.clone(), l);
            for (k, p) in ps.iter().enumerate() {
                out.push((spec.clone(), p.clone(), p.conjugate()));
                out.push((spec.clone(), p.clone(), ps[(k + 1) % ps.len()].clone()));
            }
            let nu = rat(3, 5);
            out.push((spec.clone(), DensityPair::new(-nu.clone(), int(0)), DensityPair::new(-nu, int(1))));
        }
    }
    out
}

/// Runs one check over a grid.
pub fn run_check(check: Check, grid: Grid, degree: u32, gen_cap: u32) -> CheckReport {
    let cells: Vec<CellResult> = match check {
        Check::Cmz => {
            let jobs: Vec<(SeriesSpec, DensityPair)> = (3..=5)
                .flat_map(|l| offsets(grid).into_iter().map(move |n| SeriesSpec::new(n, l)))
                .flat_map(|s| pairs(grid).into_iter().map(move |p| (s.clone(), p)))
                .collect();
            jobs.par_iter().flat_map_iter(|(s, p)| cmz_cells(s, p, degree, gen_cap)).collect()
        }
        Check::Pq => {
            let mut specs: Vec<SeriesSpec> = (2..=5)
                .flat_map(|l| offsets(grid).into_iter().map(move |n| SeriesSpec::new(n, l)))
                .collect();
            specs.push(SeriesSpec::new(int(-1), 4));
            let jobs: Vec<(SeriesSpec, DensityPair)> =
                specs.into_iter().flat_map(|s| pairs(grid).into_iter().map(move |p| (s.clone(), p))).collect();
            jobs.par_iter().map(|(s, p)| pq_cell(s, p, degree, gen_cap)).collect()
        }
        Check::Intertwiner => intertwiner_pairs(grid)
            .par_iter()
            .map(|(s, a, b)| intertwiner_cell(s, a, b, degree, gen_cap))
            .collect(),
    };
    CheckReport::new(check, grid, degree, gen_cap, cells)
}
