//! Exact classification of modules of differential operators on the line
//! as `sl(2)`-modules.
//!
//! The entry points are [`equivalence::decide`] for a pair of modules,
//! [`invariants`] for the projective invariants, [`pencils`] for the conic
//! pencils they cut out, and [`oracle`] for an independent computation of
//! the coefficients from truncated symbols.

pub mod cli;
pub mod coefficients;
pub mod equivalence;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod pencils;
pub mod scalars;

pub use error::{Error, Result};
