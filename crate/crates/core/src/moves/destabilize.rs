use super::{Check, Checks, DestabKind, MergeCase, Move, Redistribution};
use crate::error::Result;
use crate::model::{Complex, Profile, Side, Surface, TangleSummary};

/// Checks the profile of a rewritten compressionbody and returns its index.
fn checked_index(c: &Complex, cb: &str, checks: &mut Checks) -> Result<i64> {
    let profile = c.profile(c.cb(cb)?)?;
    let problems = profile.violations();
    checks.ensure(Check::Closure, problems.is_empty(), || format!("`{cb}`: {}", problems.join("; ")))?;
    Ok(profile.index())
}

/// Replaces the surface of `thick`, installs the two tangles, and checks
/// that both side indices strictly drop.
fn finish(
    before: &Complex,
    mut out: Complex,
    thick: &str,
    surface: Surface,
    upper: TangleSummary,
    lower: TangleSummary,
    checks: &mut Checks,
) -> Result<Complex> {
    let (up_id, down_id) = {
        let t = out.thick_level(thick)?;
        (t.upper_cb.clone(), t.lower_cb.clone())
    };
    let before_up = before.side_mu(thick, Side::Upper)?;
    let before_down = before.side_mu(thick, Side::Lower)?;
    out.thick.iter_mut().find(|t| t.id == thick).unwrap().surface = surface;
    out.cb_mut(&up_id)?.tangle = upper;
    out.cb_mut(&down_id)?.tangle = lower;
    let after_up = checked_index(&out, &up_id, checks)?;
    let after_down = checked_index(&out, &down_id, checks)?;
    checks.ensure(Check::DestabUpperDecrease, after_up < before_up, || format!("{after_up} not below {before_up}"))?;
    checks.ensure(Check::DestabLowerDecrease, after_down < before_down, || {
        format!("{after_down} not below {before_down}")
    })?;
    out.certify(&up_id)?;
    out.certify(&down_id)?;
    Ok(out)
}

fn by_side(side: Side, near: TangleSummary, far: TangleSummary) -> (TangleSummary, TangleSummary) {
    match side {
        Side::Upper => (near, far),
        Side::Lower => (far, near),
    }
}

/// Removes a (meridional, boundary, ghost boundary) stabilization.
pub fn apply_destabilize(c: &Complex, m: &Move, checks: &mut Checks) -> Result<Complex> {
    let Move::Destabilize { thick, destab, side, ports, ghosts, cut, far_tangle } = m else {
        return Checks::fail(Check::Precondition, "not a destabilization");
    };
    let (kind, side, gamma) = (*destab, *side, *ghosts);
    let h = c.thick_level(thick)?;
    let (g, p) = (h.surface.genus, h.surface.punctures);
    let near = c.side_cb(thick, side)?.clone();
    let far = c.side_cb(thick, side.flip())?.clone();
    let q = kind.q();

    if !kind.is_boundary() {
        checks.ensure(Check::Precondition, g >= 1, || "genus >= 1 required".into())?;
        checks.ensure(Check::Precondition, ports.is_empty() && gamma == 0, || "no ports or ghosts expected".into())?;
        if kind == DestabKind::Stab {
            return finish(c, c.clone(), thick, Surface::new(g - 1, p), c.side_cb(thick, Side::Upper)?.tangle,
                c.side_cb(thick, Side::Lower)?.tangle, checks);
        }
        let Some(arc) = *cut else {
            return Checks::fail(Check::Precondition, "meridional destabilization needs a cut strand");
        };
        checks.ensure(Check::Precondition, near.tangle.count(arc) >= 1, || format!("no {arc:?} strand on {side:?}"))?;
        let mut far_t = far.tangle;
        far_t.bridges += 1;
        let (up, down) = by_side(side, near.tangle.cut(arc), far_t);
        return finish(c, c.clone(), thick, Surface::new(g - 1, p + 2), up, down, checks);
    }

    if kind.is_ghost() {
        let need = 1.max(ports.len() as i64 - 1);
        checks.ensure(Check::Precondition, gamma >= need, || format!("{gamma} ghost arcs, need at least {need}"))?;
    } else {
        checks.ensure(Check::Precondition, ports.len() == 1 && gamma == 0, || {
            "boundary destabilization moves exactly one boundary level and no ghost arcs".into()
        })?;
    }
    let mut genus_s = 0;
    let mut punct_s = 0;
    for s in ports {
        let b = c.boundary_level(s)?;
        checks.ensure(Check::Precondition, b.owner == near.id, || format!("`{s}` is not on the {side:?} side"))?;
        genus_s += b.surface.genus;
        punct_s += b.surface.punctures;
    }
    let mut unique = ports.clone();
    unique.sort();
    unique.dedup();
    checks.ensure(Check::Precondition, unique.len() == ports.len(), || "repeated port".into())?;

    let genus_cut = genus_s + gamma - ports.len() as i64 + 1;
    let verticals_moved = punct_s - 2 * gamma;
    checks.ensure(Check::Precondition, genus_cut >= 0 && genus_cut <= g, || {
        format!("cut-off genus {genus_cut} outside 0..={g}")
    })?;
    checks.ensure(Check::Precondition, near.tangle.ghosts >= gamma, || format!("only {} ghost arcs", near.tangle.ghosts))?;
    checks.ensure(Check::Precondition, (0..=near.tangle.verticals).contains(&verticals_moved), || {
        format!("{verticals_moved} vertical arcs to move, {} available", near.tangle.verticals)
    })?;
    let new_surface = Surface::new(g - genus_cut, p - verticals_moved + 2 * q);
    let near_t = TangleSummary::new(
        near.tangle.verticals - verticals_moved,
        near.tangle.bridges + q,
        near.tangle.ghosts - gamma,
        near.tangle.loops,
    );

    let mut out = c.clone();
    for b in &mut out.boundary {
        if ports.contains(&b.id) {
            b.owner = far.id.clone();
        }
    }
    out.cb_mut(&near.id)?.minus.retain(|x| !ports.contains(x));
    out.cb_mut(&far.id)?.minus.extend(ports.iter().cloned());
    let far_minus: i64 = out.minus_surfaces(out.cb(&far.id)?)?.iter().map(|s| s.punctures).sum();
    let far_t = match far_tangle.or_else(|| TangleSummary::fewest_ghosts(new_surface.punctures, far_minus)) {
        Some(t) => t,
        None => return Checks::fail(Check::Precondition, "puncture parity on the receiving side"),
    };
    let (up, down) = by_side(side, near_t, far_t);
    finish(c, out, thick, new_surface, up, down, checks)
}

/// Cancels a perturbation: a bridge on `side` and two strands on the
/// other side merge into one.
pub fn apply_unperturb(c: &Complex, thick: &str, side: Side, merge: MergeCase, checks: &mut Checks) -> Result<Complex> {
    let h = c.thick_level(thick)?;
    let s = h.surface;
    checks.ensure(Check::Precondition, s.punctures >= 3, || format!("{} punctures, need at least 3", s.punctures))?;
    let near = c.side_cb(thick, side)?.tangle;
    let far = c.side_cb(thick, side.flip())?.tangle;
    checks.ensure(Check::Precondition, near.bridges >= 1, || format!("no bridge on {side:?}"))?;
    let ok = match merge {
        MergeCase::BridgeBridge => far.bridges >= 2,
        MergeCase::VerticalBridge => far.bridges >= 1 && far.verticals >= 1,
    };
    checks.ensure(Check::Precondition, ok, || format!("{merge:?} impossible with {far}"))?;
    let less = |t: TangleSummary| TangleSummary { bridges: t.bridges - 1, ..t };
    let (up, down) = by_side(side, less(near), less(far));
    finish(c, c.clone(), thick, Surface::new(s.genus, s.punctures - 2), up, down, checks)
}

/// Removes two punctures of a removable pair and redistributes the strands.
pub fn apply_undo_removable(c: &Complex, thick: &str, r: &Redistribution, checks: &mut Checks) -> Result<Complex> {
    let s = c.thick_level(thick)?.surface;
    checks.ensure(Check::Precondition, s.punctures >= 2, || format!("{} punctures, need at least 2", s.punctures))?;
    let (up, down) = match r {
        Redistribution::Loop { loop_side } => {
            let looped = c.side_cb(thick, *loop_side)?.tangle;
            let other = c.side_cb(thick, loop_side.flip())?.tangle;
            checks.ensure(Check::Precondition, looped.bridges >= 1 && other.bridges >= 1, || {
                "a bridge on each side is required".into()
            })?;
            let looped = TangleSummary { bridges: looped.bridges - 1, loops: looped.loops + 1, ..looped };
            let other = TangleSummary { bridges: other.bridges - 1, ..other };
            by_side(loop_side.flip(), other, looped)
        }
        Redistribution::General { upper, lower } => {
            let surface = Surface::new(s.genus, s.punctures - 2);
            for (side, t) in [(Side::Upper, upper), (Side::Lower, lower)] {
                let cb = c.side_cb(thick, side)?;
                let profile = Profile::new(surface, c.minus_surfaces(cb)?, *t);
                let problems = profile.violations();
                checks.ensure(Check::Precondition, problems.is_empty(), || {
                    format!("{side:?} tangle {t}: {}", problems.join("; "))
                })?;
            }
            (*upper, *lower)
        }
    };
    finish(c, c.clone(), thick, Surface::new(s.genus, s.punctures - 2), up, down, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::moves::apply;
    use crate::Error;

    fn rejected(r: Result<crate::moves::Applied>) -> Check {
        match r {
            Err(Error::Rejected { check, .. }) => check,
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn stab_on_genus_two() {
        let c = fixtures::heegaard(2);
        let out = apply(&c, &Move::stab("H")).unwrap().complex;
        assert_eq!(out.thick[0].surface, Surface::new(1, 0));
        assert_eq!(out.side_mu("H", Side::Upper).unwrap(), 6);
        assert_eq!(out.side_mu("H", Side::Lower).unwrap(), 6);
    }

    #[test]
    fn stab_on_sphere_is_refused() {
        assert_eq!(rejected(apply(&fixtures::one_bridge_sphere(), &Move::stab("H"))), Check::Precondition);
    }

    #[test]
    fn meridional_boundary_destabilization() {
        let c = fixtures::punctured_torus_with_vertices();
        let m = Move::Destabilize {
            thick: "H".into(),
            destab: DestabKind::MeridBdy,
            side: Side::Upper,
            ports: vec!["V1".into()],
            ghosts: 0,
            cut: None,
            far_tangle: None,
        };
        let out = apply(&c, &m).unwrap().complex;
        assert_eq!(out.thick[0].surface, Surface::new(1, 2));
        assert_eq!(out.side_cb("H", Side::Upper).unwrap().tangle, TangleSummary::new(0, 1, 0, 0));
        assert_eq!(out.side_cb("H", Side::Lower).unwrap().tangle, TangleSummary::new(2, 0, 2, 0));
        assert_eq!(out.side_mu("H", Side::Upper).unwrap(), 10);
        assert_eq!(out.side_mu("H", Side::Lower).unwrap(), 10);
    }

    #[test]
    fn unperturb_cases() {
        let c = fixtures::perturbed_sphere();
        let m = Move::Unperturb { thick: "H".into(), side: Side::Upper, merge_case: MergeCase::BridgeBridge };
        let out = apply(&c, &m).unwrap().complex;
        assert_eq!(out.thick[0].surface, Surface::sphere(2));
        for side in [Side::Upper, Side::Lower] {
            assert_eq!(out.side_cb("H", side).unwrap().tangle, TangleSummary::ARC);
        }
        let m = Move::Unperturb { thick: "H".into(), side: Side::Upper, merge_case: MergeCase::VerticalBridge };
        assert_eq!(rejected(apply(&c, &m)), Check::Precondition);
    }

    #[test]
    fn loop_pattern() {
        let c = fixtures::perturbed_sphere();
        let m = Move::UndoRemovable { thick: "H".into(), redistribution: Redistribution::default() };
        let out = apply(&c, &m).unwrap().complex;
        assert_eq!(out.side_cb("H", Side::Upper).unwrap().tangle, TangleSummary::new(0, 1, 0, 0));
        assert_eq!(out.side_cb("H", Side::Lower).unwrap().tangle, TangleSummary::new(0, 1, 0, 1));
        let bad = Move::UndoRemovable {
            thick: "H".into(),
            redistribution: Redistribution::General { upper: TangleSummary::new(1, 1, 0, 0), lower: TangleSummary::ARC },
        };
        assert_eq!(rejected(apply(&c, &bad)), Check::Precondition);
    }
}
