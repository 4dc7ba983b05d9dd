//! Regenerates the classical classification tables on rational samples.
//!
//! cargo run --example known_tables

use modeq::equivalence::{known_tables, TableName};
use modeq::error::Result;

fn main() -> Result<()> {
    for name in TableName::ALL {
        let t = known_tables(name)?;
        println!("{name} (n = {}, l = {}):", t.n, t.l);
        for class in &t.classes {
            println!("  {{{}}}", class.join(", "));
        }
    }
    Ok(())
}
