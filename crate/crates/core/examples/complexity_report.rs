//! Per-level indices and the complexity vector of a few fixed instances.

use widthcalc::complexity::level_indices;
use widthcalc::{complexity, fixtures};

fn main() -> widthcalc::Result<()> {
    for (name, c) in [
        ("one-bridge sphere", fixtures::one_bridge_sphere()),
        ("chain of three tori", fixtures::chain(3)),
        ("diamond", fixtures::diamond()),
        ("two thrice-punctured balls", fixtures::spherical_untelescoping()),
    ] {
        println!("{name}: {}", complexity(&c)?);
        for l in level_indices(&c)? {
            println!("  {:<4} mu_up={:<3} mu_down={:<3} I_up={:<3} I_down={}", l.id, l.mu_up, l.mu_down, l.index_up, l.index_down);
        }
    }
    Ok(())
}
