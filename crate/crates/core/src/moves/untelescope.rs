use std::collections::HashSet;

use super::consolidate::consolidate_in_place;
use super::disc::{boundary_reduce_mu, compress_surface, DiscData};
use super::{consolidation_candidates, Check, Checks, Untelescope};
use crate::complexity::{index_down, index_up};
use crate::error::Result;
use crate::model::{Complex, Compressionbody, Side, Surface, TangleSummary, ThickLevel, ThinLevel};

/// Indices attached to one thick level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IndexPair {
    pub mu_up: i64,
    pub mu_down: i64,
    pub index_up: i64,
    pub index_down: i64,
}

impl IndexPair {
    pub fn of(c: &Complex, thick: &str) -> Result<Self> {
        Ok(Self {
            mu_up: c.side_mu(thick, Side::Upper)?,
            mu_down: c.side_mu(thick, Side::Lower)?,
            index_up: index_up(c, thick)?,
            index_down: index_down(c, thick)?,
        })
    }
}

/// The eight relations between the indices of a thick level `old` and the
/// two thick levels replacing it, `lower` below `upper`.
pub fn untelescope_relations(old: IndexPair, lower: IndexPair, upper: IndexPair, checks: &mut Checks) -> Result<()> {
    checks.ensure(Check::LowerPieceDecrease, lower.mu_down < old.mu_down, || {
        format!("lower index {} not below {}", lower.mu_down, old.mu_down)
    })?;
    checks.ensure(Check::UpperPieceDecrease, upper.mu_up < old.mu_up, || {
        format!("upper index {} not below {}", upper.mu_up, old.mu_up)
    })?;
    checks.ensure(Check::LowerIndexSum, lower.mu_down + upper.mu_down == old.mu_down + 6, || {
        format!("{} + {} != {} + 6", lower.mu_down, upper.mu_down, old.mu_down)
    })?;
    checks.ensure(Check::UpperIndexSum, lower.mu_up + upper.mu_up == old.mu_up + 6, || {
        format!("{} + {} != {} + 6", lower.mu_up, upper.mu_up, old.mu_up)
    })?;
    checks.ensure(Check::LowerIndexDrop, lower.index_down < old.index_down, || {
        format!("{} not below {}", lower.index_down, old.index_down)
    })?;
    checks.ensure(Check::UpperIndexKept, lower.index_up == old.index_up, || {
        format!("{} != {}", lower.index_up, old.index_up)
    })?;
    checks.ensure(Check::LowerIndexKept, upper.index_down == old.index_down, || {
        format!("{} != {}", upper.index_down, old.index_down)
    })?;
    checks.ensure(Check::UpperIndexDrop, upper.index_up < old.index_up, || {
        format!("{} not below {}", upper.index_up, old.index_up)
    })
}

/// Ids of the levels created by an untelescoping.
#[derive(Debug, Clone)]
pub(crate) struct NewLevels {
    pub lower: String,
    pub upper: String,
    pub lower_far: Option<String>,
    pub upper_far: Option<String>,
    pub doubly_spotted: String,
    pub phi_plus: Option<String>,
    pub phi_minus: Option<String>,
}

struct Ids<'a> {
    c: &'a Complex,
    taken: HashSet<String>,
}

impl Ids<'_> {
    fn fresh(&mut self, prefix: &str) -> String {
        let id = (0..)
            .map(|n| if n == 0 { prefix.to_owned() } else { format!("{prefix}{n}") })
            .find(|id| !self.taken.contains(id) && self.c.port(id).is_err() && self.c.ids().all(|x| x != id))
            .unwrap();
        self.taken.insert(id.clone());
        id
    }
}

/// Surface between two discs on opposite sides of `h`, capped off on both sides.
pub fn middle_surface(h: Surface, dm: &DiscData, dp: &DiscData) -> Result<Surface> {
    let (qm, qp) = (dm.q, dp.q);
    let f = match (&dm.split, &dp.split) {
        (None, None) => Surface::new(h.genus - 2, h.punctures + 2 * qp + 2 * qm),
        (Some(m), Some(p)) => {
            Surface::new(p.near.genus - m.far.genus, p.near.punctures - m.far.punctures + qp + qm)
        }
        (None, Some(p)) => Surface::new(p.near.genus - 1, p.near.punctures + qp + 2 * qm),
        (Some(m), None) => Surface::new(m.near.genus - 1, m.near.punctures + qm + 2 * qp),
    };
    if f.genus < 0 || f.punctures < 0 {
        return Checks::fail(Check::Precondition, format!("discs do not fit together: middle surface {f:?}"));
    }
    if let (Some(m), Some(p)) = (&dm.split, &dp.split) {
        if p.near.punctures - m.far.punctures + qp + qm < qp + qm {
            return Checks::fail(Check::Precondition, "far sides of the two discs overlap");
        }
    }
    Ok(f)
}

/// Tangle of the compressionbody between a compressed surface and the
/// surface it was compressed from: straight verticals, plus one ghost arc
/// through a punctured disc.
fn collar_tangle(p_plus: i64, q: i64) -> TangleSummary {
    TangleSummary::new(p_plus, 0, q, 0)
}

fn new_cb(id: &str, plus: &str, minus: Vec<String>, tangle: TangleSummary) -> Compressionbody {
    Compressionbody {
        id: id.into(),
        plus: plus.into(),
        minus,
        tangle,
        product_certificate: false,
        ball_certificate: false,
    }
}

/// Builds the untelescoped complex without any consolidation.
pub(crate) fn untelescope_raw(c: &Complex, u: &Untelescope, checks: &mut Checks) -> Result<(Complex, NewLevels)> {
    let h = c.thick_level(&u.thick)?.clone();
    let lower = c.cb(&h.lower_cb)?.clone();
    let upper = c.cb(&h.upper_cb)?.clone();
    let (dm, dp) = (&u.disc_minus, &u.disc_plus);

    let red_m = boundary_reduce_mu(c, &lower, dm)?;
    let red_p = boundary_reduce_mu(c, &upper, dp)?;
    checks.ensure(Check::BoundaryReduction, true, String::new)?;
    checks.ensure(Check::PieceIndexDecrease, true, String::new)?;
    let h_minus = compress_surface(h.surface, dm)?;
    let h_plus = compress_surface(h.surface, dp)?;
    let f0 = middle_surface(h.surface, dm, dp)?;
    let phi_plus = h_plus.get(1).copied();
    let phi_minus = h_minus.get(1).copied();

    let mut ids = Ids { c, taken: HashSet::new() };
    let n = NewLevels {
        lower: ids.fresh(&format!("{}-", h.id)),
        upper: ids.fresh(&format!("{}+", h.id)),
        lower_far: phi_minus.map(|_| ids.fresh(&format!("{}-b", h.id))),
        upper_far: phi_plus.map(|_| ids.fresh(&format!("{}+b", h.id))),
        doubly_spotted: ids.fresh(&format!("{}~F", h.id)),
        phi_plus: phi_plus.map(|_| ids.fresh(&format!("{}~P", h.id))),
        phi_minus: phi_minus.map(|_| ids.fresh(&format!("{}~M", h.id))),
    };
    let lower_top = ids.fresh(&format!("{}.up", n.lower));
    let upper_bottom = ids.fresh(&format!("{}.down", n.upper));

    let mut out = c.clone();
    out.thick.retain(|t| t.id != h.id);
    let mut touched = vec![lower.id.clone(), upper.id.clone(), lower_top.clone(), upper_bottom.clone()];

    // Lower side: the near piece keeps the old compressionbody id.
    {
        let near = &red_m.pieces[0];
        let l = out.cb_mut(&lower.id)?;
        l.plus = n.lower.clone();
        l.minus = near.ports.clone();
        l.tangle = near.profile.tangle;
    }
    out.thick.push(ThickLevel {
        id: n.lower.clone(),
        surface: h_minus[0],
        upper_cb: lower_top.clone(),
        lower_cb: lower.id.clone(),
    });
    let mut lower_top_minus = vec![n.doubly_spotted.clone()];

    // Upper side, symmetrically.
    {
        let near = &red_p.pieces[0];
        let up = out.cb_mut(&upper.id)?;
        up.plus = n.upper.clone();
        up.minus = near.ports.clone();
        up.tangle = near.profile.tangle;
    }
    out.thick.push(ThickLevel {
        id: n.upper.clone(),
        surface: h_plus[0],
        upper_cb: upper.id.clone(),
        lower_cb: upper_bottom.clone(),
    });
    let mut upper_bottom_minus = vec![n.doubly_spotted.clone()];

    out.thin.push(ThinLevel {
        id: n.doubly_spotted.clone(),
        surface: f0,
        from_cb: lower_top.clone(),
        to_cb: upper_bottom.clone(),
    });

    if let (Some(far_thick), Some(phi), Some(s)) = (&n.lower_far, &n.phi_minus, phi_minus) {
        let far = &red_m.pieces[1];
        let far_down = ids.fresh(&format!("{far_thick}.down"));
        let far_up = ids.fresh(&format!("{far_thick}.up"));
        repoint(&mut out, &far.ports, &lower.id, &far_down);
        out.cbs.push(new_cb(&far_down, far_thick, far.ports.clone(), far.profile.tangle));
        out.cbs.push(new_cb(&far_up, far_thick, vec![phi.clone()], TangleSummary::verticals(s.punctures)));
        out.thick.push(ThickLevel { id: far_thick.clone(), surface: s, upper_cb: far_up.clone(), lower_cb: far_down.clone() });
        out.thin.push(ThinLevel { id: phi.clone(), surface: s, from_cb: far_up.clone(), to_cb: upper_bottom.clone() });
        upper_bottom_minus.push(phi.clone());
        touched.extend([far_down, far_up]);
    }
    if let (Some(far_thick), Some(phi), Some(s)) = (&n.upper_far, &n.phi_plus, phi_plus) {
        let far = &red_p.pieces[1];
        let far_up = ids.fresh(&format!("{far_thick}.up"));
        let far_down = ids.fresh(&format!("{far_thick}.down"));
        repoint(&mut out, &far.ports, &upper.id, &far_up);
        out.cbs.push(new_cb(&far_up, far_thick, far.ports.clone(), far.profile.tangle));
        out.cbs.push(new_cb(&far_down, far_thick, vec![phi.clone()], TangleSummary::verticals(s.punctures)));
        out.thick.push(ThickLevel { id: far_thick.clone(), surface: s, upper_cb: far_up.clone(), lower_cb: far_down.clone() });
        out.thin.push(ThinLevel { id: phi.clone(), surface: s, from_cb: lower_top.clone(), to_cb: far_down.clone() });
        lower_top_minus.push(phi.clone());
        touched.extend([far_up, far_down]);
    }

    out.cbs.push(new_cb(&lower_top, &n.lower, lower_top_minus, collar_tangle(h_minus[0].punctures, dp.q)));
    out.cbs.push(new_cb(&upper_bottom, &n.upper, upper_bottom_minus, collar_tangle(h_plus[0].punctures, dm.q)));
    for id in &touched {
        out.certify(id)?;
    }
    out.normalize();
    Ok((out, n))
}

/// Moves the ports in `ports` from compressionbody `from` to `to`.
fn repoint(c: &mut Complex, ports: &[String], from: &str, to: &str) {
    for f in &mut c.thin {
        if ports.contains(&f.id) {
            if f.from_cb == from {
                f.from_cb = to.into();
            }
            if f.to_cb == from {
                f.to_cb = to.into();
            }
        }
    }
    for b in &mut c.boundary {
        if ports.contains(&b.id) && b.owner == from {
            b.owner = to.into();
        }
    }
}

/// Consolidates the two products the far pieces create.
fn consolidate_far_pieces(c: &mut Complex, n: &NewLevels, checks: &mut Checks) -> Result<()> {
    if let (Some(t), Some(f)) = (&n.lower_far, &n.phi_minus) {
        consolidate_in_place(c, t, f, None, checks)?;
    }
    if let (Some(t), Some(f)) = (&n.upper_far, &n.phi_plus) {
        consolidate_in_place(c, t, f, None, checks)?;
    }
    c.normalize();
    Ok(())
}

fn check_relations(before: &Complex, thick: &str, after: &Complex, n: &NewLevels, checks: &mut Checks) -> Result<()> {
    let old = IndexPair::of(before, thick)?;
    let lower = IndexPair::of(after, &n.lower)?;
    let upper = IndexPair::of(after, &n.upper)?;
    untelescope_relations(old, lower, upper, checks)
}

/// Splits a thick level along a pair of discs on opposite sides.
///
/// The result still holds the product regions cut off by separating discs;
/// the index relations are checked after those products are consolidated.
pub fn apply_untelescope(c: &Complex, u: &Untelescope, checks: &mut Checks) -> Result<Complex> {
    let (raw, n) = untelescope_raw(c, u, checks)?;
    let mut merged = raw.clone();
    consolidate_far_pieces(&mut merged, &n, checks)?;
    check_relations(c, &u.thick, &merged, &n, checks)?;
    Ok(raw)
}

/// Untelescopes, consolidates the products cut off by the discs, then
/// consolidates every product exposed next to a thin level.
pub fn elementary_thinning_sequence(c: &Complex, u: &Untelescope, checks: &mut Checks) -> Result<Complex> {
    let pre = consolidation_candidates(c);
    checks.ensure(Check::Precondition, pre.is_empty(), || format!("product next to a thin level: {}", pre[0]))?;
    let (mut out, n) = untelescope_raw(c, u, checks)?;
    consolidate_far_pieces(&mut out, &n, checks)?;
    check_relations(c, &u.thick, &out, &n, checks)?;

    let limit = out.thick.len();
    for _ in 0..limit {
        let Some(super::Move::Consolidate { thick, thin, .. }) = consolidation_candidates(&out).into_iter().next()
        else {
            break;
        };
        consolidate_in_place(&mut out, &thick, &thin, None, checks)?;
    }
    out.normalize();
    let persists = out.thin.iter().any(|f| f.id == n.doubly_spotted);
    checks.ensure(Check::DoublySpottedPersists, persists, || format!("`{}` was consolidated away", n.doubly_spotted))?;
    let left = consolidation_candidates(&out);
    checks.ensure(Check::NoProductsRemain, left.is_empty(), || format!("{} remains", left[0]))?;
    checks.ensure(Check::ThinNonEmpty, !out.thin.is_empty(), || "no thin level".into())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity;
    use crate::fixtures;
    use crate::moves::{apply, Move};

    pub(crate) fn spherical_move() -> Untelescope {
        fixtures::spherical_thinning_move()
    }

    #[test]
    fn spherical_configuration_thins() {
        let c = fixtures::spherical_untelescoping();
        let out = apply(&c, &Move::ThinningSequence(spherical_move())).unwrap();
        assert_eq!(out.complex.thick.len(), 2);
        assert_eq!(out.complex.thin.len(), 1);
        assert_eq!(complexity(&out.complex).unwrap().terms, vec![18, 18]);
        for check in [Check::LowerIndexSum, Check::UpperIndexSum, Check::DoublySpottedPersists] {
            assert!(out.checks.contains(&check), "{check}");
        }
    }

    #[test]
    fn raw_untelescoping_keeps_far_products() {
        let c = fixtures::spherical_untelescoping();
        let out = apply(&c, &Move::Untelescope(spherical_move())).unwrap();
        assert_eq!(out.complex.thick.len(), 4);
        assert_eq!(out.complex.thin.len(), 3);
        assert_eq!(complexity(&out.complex).unwrap().terms, vec![18, 18, 12, 12]);
    }

    #[test]
    fn genus_two_non_separating_pair() {
        let c = fixtures::heegaard(2);
        let u = Untelescope {
            thick: "H".into(),
            disc_minus: DiscData::non_separating(0, None),
            disc_plus: DiscData::non_separating(0, None),
        };
        let out = apply(&c, &Move::ThinningSequence(u)).unwrap();
        let f = &out.complex.thin[0];
        assert_eq!(f.surface, Surface::sphere(0));
        assert_eq!(out.complex.side_mu("H-", Side::Upper).unwrap(), 12);
        assert_eq!(out.complex.side_mu("H-", Side::Lower).unwrap(), 6);
    }

    #[test]
    fn broken_sum_is_named() {
        let old = IndexPair { mu_up: 12, mu_down: 12, index_up: 12, index_down: 12 };
        let lower = IndexPair { mu_up: 12, mu_down: 6, index_up: 12, index_down: 6 };
        let upper = IndexPair { mu_up: 6, mu_down: 14, index_up: 6, index_down: 12 };
        match untelescope_relations(old, lower, upper, &mut Checks::default()) {
            Err(crate::Error::Rejected { check, .. }) => assert_eq!(check, Check::LowerIndexSum),
            other => panic!("{other:?}"),
        }
    }
}
