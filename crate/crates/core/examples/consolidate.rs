//! Removes a product region between two thick levels.

use widthcalc::{apply, complexity, fixtures, Move};

fn main() -> widthcalc::Result<()> {
    let c = fixtures::consolidation_pair();
    let m = Move::Consolidate { thick: "J".into(), thin: "F".into(), tangle: None };
    let out = apply(&c, &m)?;
    println!("{m}");
    println!("  {} -> {}", complexity(&c)?, complexity(&out.complex)?);
    println!("  checks: {:?}", out.checks);
    println!("{}", out.complex.to_json());
    Ok(())
}
