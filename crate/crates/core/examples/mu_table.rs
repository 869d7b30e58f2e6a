//! Prints the index of a few standard compressionbodies.

use widthcalc::{Profile, Surface, TangleSummary};

fn main() {
    let rows = [
        ("ball", Profile::new(Surface::sphere(0), vec![], TangleSummary::EMPTY)),
        ("ball with one arc", Profile::new(Surface::sphere(2), vec![], TangleSummary::ARC)),
        ("solid torus", Profile::new(Surface::new(1, 0), vec![], TangleSummary::EMPTY)),
        ("genus-2 handlebody", Profile::new(Surface::new(2, 0), vec![], TangleSummary::EMPTY)),
        (
            "product over a 4-punctured torus",
            Profile::new(Surface::new(1, 4), vec![Surface::new(1, 4)], TangleSummary::verticals(4)),
        ),
        (
            "torus over two spheres, 2 bridges",
            Profile::new(Surface::new(1, 4), vec![Surface::sphere(0), Surface::sphere(0)], TangleSummary::new(0, 2, 0, 0)),
        ),
    ];
    for (name, p) in rows {
        let ok = if p.is_valid() { "" } else { "  (invalid)" };
        println!("{name:<36} mu = {:>3}{ok}", p.index());
    }
}
