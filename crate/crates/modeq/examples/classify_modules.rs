//! Decides a handful of equivalence questions and prints the verdicts.
//!
//! cargo run --example classify_modules

use modeq::coefficients::{DensityPair, SeriesSpec};
use modeq::equivalence::{decide, decide_lacunary, resonance_class, DecideOptions, Verdict};
use modeq::error::Result;
use modeq::scalars::{int, rat};

fn show(label: &str, spec: &SeriesSpec, a: &DensityPair, b: &DensityPair) -> Result<()> {
    let v = decide(spec, a, b)?;
    print!("{label:<28} n = {:<5} l = {}  {:?}  ", spec.n, spec.l, resonance_class(spec));
    match &v {
        Verdict::Equivalent { witness, .. } => {
            let eps: Vec<String> = witness.values().map(|e| e.to_string()).collect();
            println!("Equivalent, ε = [{}]", eps.join(", "));
        }
        Verdict::Inequivalent { failing } => println!(
            "Inequivalent at ({}, {}): {} {} vs {}",
            failing.i, failing.j, failing.kind, failing.value_a, failing.value_b
        ),
        Verdict::Unsupported { reason } => println!("Unsupported: {reason}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    let a = DensityPair::new(rat(1, 3), rat(7, 2));
    show("conjugate pair", &SeriesSpec::new(rat(2, 5), 6), &a, &a.conjugate())?;
    show("unrelated pair", &SeriesSpec::new(rat(2, 5), 6), &a, &DensityPair::new(rat(2, 5), rat(7, 2)))?;

    // Composition with the de Rham differential.
    let nu = rat(3, 5);
    let (x, y) = (DensityPair::new(-nu.clone(), int(0)), DensityPair::new(-nu, int(1)));
    show("de Rham pair", &SeriesSpec::new(rat(1, 3), 8), &x, &y)?;

    show("split second order", &SeriesSpec::new(int(-2), 3), &DensityPair::new(int(0), int(0)), &DensityPair::new(int(1), int(1)))?;
    show("resonant, R separates", &SeriesSpec::new(int(-1), 4), &DensityPair::new(rat(1, 2), rat(5, 2)), &DensityPair::new(int(1), int(3)))?;
    show("resonant, unclassified", &SeriesSpec::new(int(-1), 6), &a, &a.conjugate())?;

    let v = decide_lacunary(&[0, 2, 3, 5], &int(1), &a, &a.conjugate(), DecideOptions::default())?;
    println!("{:<28} pattern {{0,2,3,5}} at n = 1: {}", "lacunary", v.outcome());
    Ok(())
}
