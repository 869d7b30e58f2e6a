//! Two thrice-punctured balls glued along their outer spheres give one
//! thick sphere with index 24. Untelescoping along a separating disc on each
//! side and consolidating the products it creates splits it into two thick
//! spheres of index 18.

use widthcalc::moves::apply_untelescope;
use widthcalc::moves::Checks;
use widthcalc::{apply, complexity, fixtures, Move};

fn main() -> widthcalc::Result<()> {
    let c = fixtures::spherical_untelescoping();
    let u = fixtures::spherical_thinning_move();
    println!("before:        {}", complexity(&c)?);

    let first = apply_untelescope(&c, &u, &mut Checks::default())?;
    println!("untelescoped:  {} ({} thick levels)", complexity(&first)?, first.thick.len());

    let done = apply(&c, &Move::ThinningSequence(u))?;
    println!("consolidated:  {}", complexity(&done.complex)?);
    for check in &done.checks {
        println!("  passed {check}");
    }
    Ok(())
}
