//! Recovers coefficients from the brute-force quantization and compares
//! them with the closed form, then runs the small grid sweep.
//!
//! cargo run --release --example oracle_check

use modeq::coefficients::{b_cmz, CoeffKey, DensityPair, SeriesSpec};
use modeq::error::Result;
use modeq::oracle::checks::{run_check, Check, Grid};
use modeq::oracle::{brute_force_intertwiner, recover_b, DEFAULT_DEGREE, DEFAULT_GEN_CAP};
use modeq::scalars::{int, rat};

fn main() -> Result<()> {
    let spec = SeriesSpec::new(rat(1, 5), 5);
    let p = DensityPair::new(rat(-2, 3), rat(7, 4));
    for (i, j) in [(2, 0), (3, 0), (4, 0), (4, 2)] {
        let got = recover_b(&spec, &p, i, j, DEFAULT_DEGREE)?;
        let want = b_cmz(&CoeffKey::new(&spec.n + int(j as i64), (i - j) as u32), &p)?;
        println!("b({i},{j}): oracle {got}, closed form {want}");
    }

    if let Some(eps) = brute_force_intertwiner(&spec, &p, &p.conjugate(), 6, 5)? {
        let eps: Vec<String> = eps.iter().map(|e| e.to_string()).collect();
        println!("intertwiner to the conjugate: ε = [{}]", eps.join(", "));
    }

    for check in [Check::Cmz, Check::Pq] {
        let r = run_check(check, Grid::Small, DEFAULT_DEGREE, DEFAULT_GEN_CAP);
        println!("{check:?}: {} passed, {} failed, {} skipped", r.passed, r.failed, r.skipped);
    }
    Ok(())
}
