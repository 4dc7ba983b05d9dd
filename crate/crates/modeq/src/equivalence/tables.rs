//! Regeneration of classical classification tables on rational samples.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{DensityPair, SeriesSpec};
use crate::error::{Error, Result};
use crate::scalars::{fmt_rational, int, rat, Rational};

use super::decide;

/// The tables that can be regenerated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum TableName {
    /// Second-order operators `D²_{λλ}` (length 3, `n = -2`).
    DO97,
    /// Third-order operators `D³_{λλ}` (length 4, `n = -3`).
    GO96,
    /// Length-3 quotients with non-half-integral order `k = -1/22`.
    LO99L3,
    /// Second-order operators `D²_{λ,λ+3}` (length 3, `n = 1`).
    Ga00D2,
    /// Third-order operators `D³_{λ,λ+4}` (length 4, `n = 1`).
    Ga00D3,
}

impl TableName {
    pub const ALL: [TableName; 5] =
        [TableName::DO97, TableName::GO96, TableName::LO99L3, TableName::Ga00D2, TableName::Ga00D3];
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableName::DO97 => "DO97",
            TableName::GO96 => "GO96",
            TableName::LO99L3 => "LO99_l3",
            TableName::Ga00D2 => "Ga00_D2",
            TableName::Ga00D3 => "Ga00_D3",
        })
    }
}

impl FromStr for TableName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown table {s:?}")))
    }
}

/// One sampled module.
#[derive(Clone, Debug, Serialize)]
pub struct TableSample {
    pub label: String,
    pub pair: DensityPair,
}

/// A regenerated table: samples grouped into equivalence classes.
#[derive(Clone, Debug, Serialize)]
pub struct KnownTable {
    pub name: String,
    pub n: String,
    pub l: usize,
    pub samples: Vec<TableSample>,
    /// Each class lists sample labels.
    pub classes: Vec<Vec<String>>,
}

impl KnownTable {
    /// Index of the class containing the sample labelled `label`.
    pub fn class_of(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.iter().any(|x| x == label))
    }

    pub fn same_class(&self, x: &str, y: &str) -> bool {
        matches!((self.class_of(x), self.class_of(y)), (Some(a), Some(b)) if a == b)
    }
}

fn diag(lambdas: &[Rational]) -> Vec<TableSample> {
    lambdas
        .iter()
        .map(|l| TableSample { label: format!("λ={}", fmt_rational(l)), pair: DensityPair::new(l.clone(), l.clone()) })
        .collect()
}

fn shifted(lambdas: &[Rational], delta: i64) -> Vec<TableSample> {
    lambdas
        .iter()
        .map(|l| TableSample {
            label: format!("λ={}", fmt_rational(l)),
            pair: DensityPair::new(l.clone(), l + int(delta)),
        })
        .collect()
}

/// Regenerates a table by pairwise [`decide`] calls over its samples.
pub fn known_tables(which: TableName) -> Result<KnownTable> {
    let small = |xs: &[(i64, i64)]| xs.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>();
    let (n, l, samples) = match which {
        TableName::DO97 => (int(-2), 3, diag(&small(&[(0, 1), (1, 1), (2, 1), (3, 1), (-1, 1), (1, 2), (1, 3)]))),
        TableName::GO96 => (int(-3), 4, diag(&small(&[(0, 1), (1, 1), (1, 2), (2, 1), (3, 1), (-1, 1), (1, 3)]))),
        TableName::LO99L3 => (
            rat(1, 22),
            3,
            diag(&small(&[(9, 44), (35, 44), (0, 1), (1, 1), (1, 2), (2, 1), (-1, 3)])),
        ),
        TableName::Ga00D2 => (int(1), 3, shifted(&small(&[(0, 1), (-2, 1), (1, 1), (2, 1), (-1, 1), (1, 2)]), 3)),
        TableName::Ga00D3 => (
            int(1),
            4,
            shifted(&small(&[(0, 1), (-3, 1), (1, 1), (2, 1), (-1, 1), (1, 2), (-3, 2), (-1, 3)]), 4),
        ),
    };
    let spec = SeriesSpec::new(n.clone(), l);
    let m = samples.len();
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let verdicts: Vec<Result<bool>> = cells
        .par_iter()
        .map(|&(i, j)| decide(&spec, &samples[i].pair, &samples[j].pair).map(|v| v.is_equivalent()))
        .collect();
    let mut class: Vec<usize> = (0..m).collect();
    for (&(i, j), v) in cells.iter().zip(verdicts) {
        if v? {
            let (ci, cj) = (class[i], class[j]);
            for c in class.iter_mut() {
                if *c == cj {
                    *c = ci;
                }
            }
        }
    }
    let mut classes: Vec<Vec<String>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (k, s) in samples.iter().enumerate() {
        match seen.iter().position(|&c| c == class[k]) {
            Some(pos) => classes[pos].push(s.label.clone()),
            None => {
                seen.push(class[k]);
                classes.push(vec![s.label.clone()]);
            }
        }
    }
    Ok(KnownTable { name: which.to_string(), n: fmt_rational(&n), l, samples, classes })
}
