//! The reducing moves: stabilization, perturbation and a removable loop.

use widthcalc::moves::{DestabKind, MergeCase, Redistribution};
use widthcalc::{apply, complexity, fixtures, Move, Side};

fn show(name: &str, c: &widthcalc::Complex, m: &Move) {
    match apply(c, m) {
        Ok(a) => println!("{name}: {} -> {}", complexity(c).unwrap(), complexity(&a.complex).unwrap()),
        Err(e) => println!("{name}: rejected, {e}"),
    }
}

fn main() {
    show("stabilization on a genus-2 splitting", &fixtures::heegaard(2), &Move::stab("H"));
    show("stabilization on a sphere", &fixtures::one_bridge_sphere(), &Move::stab("H"));

    let perturbed = fixtures::perturbed_sphere();
    show(
        "unperturb",
        &perturbed,
        &Move::Unperturb { thick: "H".into(), side: Side::Upper, merge_case: MergeCase::BridgeBridge },
    );
    show(
        "undo removable loop",
        &perturbed,
        &Move::UndoRemovable { thick: "H".into(), redistribution: Redistribution::default() },
    );

    let vertices = fixtures::punctured_torus_with_vertices();
    show(
        "meridional boundary destabilization",
        &vertices,
        &Move::Destabilize {
            thick: "H".into(),
            destab: DestabKind::MeridBdy,
            side: Side::Upper,
            ports: vec!["V1".into()],
            ghosts: 0,
            cut: None,
            far_tangle: None,
        },
    );
}
