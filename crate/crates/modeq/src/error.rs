use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes for B_{{m+r,m}} with m = {m}, r = {r}: resonance boundary")]
    DenominatorVanishes { m: String, r: u32 },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("resonant input: {0}")]
    ResonantInput(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("proportionality violated in block ({i},{j}): {detail}")]
    ProportionalityViolated { i: usize, j: usize, detail: String },
    #[error("series specs differ: {0}")]
    SpecMismatch(String),
    #[error("unsupported lacunary pattern {0:?}")]
    UnsupportedPattern(Vec<usize>),
    #[error("n = {n} is excluded for pattern {pattern:?}")]
    ExcludedN { n: String, pattern: Vec<usize> },
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("oracle invariant violated: {0}")]
    OracleInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
