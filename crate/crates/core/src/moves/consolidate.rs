use super::{Check, Checks};
use crate::error::Result;
use crate::model::{mu, Complex, Profile, TangleSummary};

/// Removes `thick` and `thin` across the product between them and merges
/// the compressionbody beyond `thin` with the far compressionbody of `thick`.
pub fn apply_consolidate(
    complex: &Complex,
    thick: &str,
    thin: &str,
    tangle: Option<TangleSummary>,
    checks: &mut Checks,
) -> Result<Complex> {
    let mut out = complex.clone();
    consolidate_in_place(&mut out, thick, thin, tangle, checks)?;
    Ok(out)
}

/// In-place consolidation; returns the id of the merged compressionbody.
pub fn consolidate_in_place(
    c: &mut Complex,
    thick: &str,
    thin: &str,
    tangle: Option<TangleSummary>,
    checks: &mut Checks,
) -> Result<String> {
    let h = c.thick_level(thick)?.clone();
    let q = c.thin_level(thin)?.clone();
    let (p_id, a_id, b_id) = if q.to_cb == h.lower_cb {
        (h.lower_cb.clone(), q.from_cb.clone(), h.upper_cb.clone())
    } else if q.from_cb == h.upper_cb {
        (h.upper_cb.clone(), q.to_cb.clone(), h.lower_cb.clone())
    } else {
        return Checks::fail(Check::Precondition, format!("`{thin}` is not adjacent to `{thick}`"));
    };
    let p = c.cb(&p_id)?;
    checks.ensure(Check::Precondition, p.product_certificate, || format!("`{p_id}` is not a certified product"))?;
    checks.ensure(Check::Precondition, p.minus == [thin], || format!("`{p_id}` has ports {:?}", p.minus))?;
    let a = c.cb(&a_id)?.clone();
    let b = c.cb(&b_id)?.clone();
    checks.ensure(Check::Precondition, a.plus != thick, || "thin level returns to its own thick level".into())?;
    let (mu_a, mu_b) = (mu(&a, c)?, mu(&b, c)?);

    let mut minus: Vec<String> = a.minus.iter().filter(|p| *p != thin).cloned().collect();
    minus.extend(b.minus.iter().cloned());
    let plus = c.plus_surface(&a)?;
    let minus_surfaces = minus.iter().map(|p| c.port(p).map(|p| p.surface())).collect::<Result<Vec<_>>>()?;
    let p_minus: i64 = minus_surfaces.iter().map(|s| s.punctures).sum();
    let merged_tangle = match tangle.or_else(|| TangleSummary::fewest_ghosts(plus.punctures, p_minus)) {
        Some(t) => t,
        None => return Checks::fail(Check::Precondition, "puncture parity of the merged body"),
    };
    let profile = Profile::new(plus, minus_surfaces, merged_tangle);
    let problems = profile.violations();
    checks.ensure(Check::Closure, problems.is_empty(), || format!("merged body: {}", problems.join("; ")))?;
    let mu_c = profile.index();
    checks.ensure(Check::ConsolidationIndex, mu_c == mu_a + mu_b - 6, || {
        format!("{mu_c} != {mu_a} + {mu_b} - 6")
    })?;

    c.thick.retain(|t| t.id != thick);
    c.thin.retain(|t| t.id != thin);
    c.cbs.retain(|cb| cb.id != p_id && cb.id != b_id);
    for f in &mut c.thin {
        if f.from_cb == b_id {
            f.from_cb = a_id.clone();
        }
        if f.to_cb == b_id {
            f.to_cb = a_id.clone();
        }
    }
    for bl in &mut c.boundary {
        if bl.owner == b_id {
            bl.owner = a_id.clone();
        }
    }
    let merged = c.cb_mut(&a_id)?;
    merged.minus = minus;
    merged.tangle = merged_tangle;
    c.certify(&a_id)?;
    Ok(a_id)
}
