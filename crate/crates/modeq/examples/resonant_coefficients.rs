//! Resonant coefficients: the antidiagonal scalars, b̄ at gap three, and a
//! resonant equivalence that needs the extra vanishing condition.
//!
//! cargo run --example resonant_coefficients

use modeq::coefficients::{a_res, b_eval, bbar_res, CoeffKey, DensityPair, SeriesSpec};
use modeq::equivalence::decide;
use modeq::error::Result;
use modeq::scalars::{int, rat};

fn main() -> Result<()> {
    let p = DensityPair::new(rat(1, 3), rat(5, 2));
    for m in [int(0), rat(-1, 2), int(-1)] {
        println!("a(1-m, m) at m = {m}: {}", a_res(&m, &p)?);
    }
    let b31 = b_eval(&CoeffKey::new(int(1), 2), &p)?;
    println!("B(3,1) = {b31}, b̄(3,0) = {}", bbar_res(&CoeffKey::new(int(0), 3), &p)?);

    // n = 0, l = 4 on B(3,1) = 0: δ = 3 makes (δ)_4 vanish, δ = -5/9 does not.
    let on_b31 = |c| DensityPair::from_c_delta(&c, &(&c * &c - int(1)));
    let spec = SeriesSpec::new(int(0), 4);
    for (x, y) in [(int(2), rat(2, 3)), (rat(2, 3), rat(1, 2))] {
        let v = decide(&spec, &on_b31(x.clone()), &on_b31(y.clone()))?;
        println!("c = {x} vs c = {y}: {}", v.outcome());
    }
    Ok(())
}
