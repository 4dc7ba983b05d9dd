//! Evaluates the named invariants at a few modules and shows that
//! conjugate modules share them.
//!
//! cargo run --example invariants

use modeq::coefficients::{DensityPair, SeriesSpec};
use modeq::error::Result;
use modeq::invariants::{invariant, svc_profile, InvariantKind};
use modeq::scalars::rat;

fn main() -> Result<()> {
    let n = rat(-1, 3);
    let p = DensityPair::new(rat(1, 3), rat(5, 2));
    println!("n = {n}, (λ, μ) = ({}, {}), γ = {}, δ = {}", p.lambda, p.mu, p.gamma(), p.delta());
    for kind in InvariantKind::NAMED {
        let here = invariant(kind, &n, &p)?;
        let there = invariant(kind, &n, &p.conjugate())?;
        let shown = here.value.as_ref().map_or("undefined".to_string(), |v| v.to_string());
        println!("  {:<6} = {shown:<24} conjugate agrees: {}", kind.to_string(), here == there);
    }

    println!("vanishing profile at length 5:");
    for e in svc_profile(&SeriesSpec::new(n, 5), &p) {
        println!("  ({}, {}) -> {}{}", e.i, e.j, e.value, if e.is_zero { "  (zero)" } else { "" });
    }
    Ok(())
}
