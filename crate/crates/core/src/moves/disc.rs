use serde::{Deserialize, Serialize};

use super::{Check, Checks};
use crate::error::Result;
use crate::model::{ArcKind, Complex, Compressionbody, Profile, Surface, TangleSummary};

/// One side of a separating disc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SidePart {
    /// Genus and punctures of this side of the compressed surface, before capping.
    pub genus: i64,
    pub punctures: i64,
    /// Negative-boundary ports that end up in this piece.
    #[serde(default)]
    pub ports: Vec<String>,
    pub tangle: TangleSummary,
}

/// The two sides of a separating disc. When two discs are used together,
/// `near` is the side containing the other disc's boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Split {
    pub near: SidePart,
    pub far: SidePart,
}

/// A compressing, semi-compressing, cut or semi-cut disc, summarized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscData {
    /// Points where the disc meets the graph: 0 or 1.
    pub q: i64,
    pub separating: bool,
    /// The strand the disc meets when `q = 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<ArcKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
}

impl DiscData {
    pub fn non_separating(q: i64, cut: Option<ArcKind>) -> Self {
        Self { q, separating: false, cut, split: None }
    }

    pub fn separating(q: i64, cut: Option<ArcKind>, near: SidePart, far: SidePart) -> Self {
        Self { q, separating: true, cut, split: Some(Split { near, far }) }
    }

    pub fn delta(&self) -> i64 {
        i64::from(self.separating)
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        if !(0..=1).contains(&self.q) {
            return Checks::fail(Check::Precondition, format!("disc meets the graph {} times", self.q));
        }
        if self.q == 1 && self.cut.is_none() {
            return Checks::fail(Check::Precondition, "punctured disc without a cut strand");
        }
        if self.separating != self.split.is_some() {
            return Checks::fail(Check::Precondition, "split must be given exactly for separating discs");
        }
        Ok(())
    }

    /// Tangle after cutting along the disc.
    pub(crate) fn cut_tangle(&self, t: TangleSummary) -> Result<TangleSummary> {
        match (self.q, self.cut) {
            (1, Some(kind)) if t.count(kind) >= 1 => Ok(t.cut(kind)),
            (1, Some(kind)) => Checks::fail(Check::Precondition, format!("no {kind:?} strand to cut in {t}")),
            _ => Ok(t),
        }
    }
}

/// Surface obtained by compressing `s` along `d`: one component for a
/// non-separating disc, two (near, far) for a separating one.
pub fn compress_surface(s: Surface, d: &DiscData) -> Result<Vec<Surface>> {
    d.check_shape()?;
    match &d.split {
        None => {
            if s.genus < 1 {
                return Checks::fail(Check::Precondition, "non-separating disc on a sphere");
            }
            Ok(vec![Surface::new(s.genus - 1, s.punctures + 2 * d.q)])
        }
        Some(Split { near, far }) => {
            if near.genus < 0 || far.genus < 0 || near.punctures < 0 || far.punctures < 0 {
                return Checks::fail(Check::Precondition, "negative split data");
            }
            if near.genus + far.genus != s.genus || near.punctures + far.punctures != s.punctures {
                return Checks::fail(
                    Check::Precondition,
                    format!(
                        "split ({},{} | {},{}) does not sum to ({},{})",
                        near.genus, near.punctures, far.genus, far.punctures, s.genus, s.punctures
                    ),
                );
            }
            Ok(vec![
                Surface::new(near.genus, near.punctures + d.q),
                Surface::new(far.genus, far.punctures + d.q),
            ])
        }
    }
}

/// A compressionbody piece left after boundary reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub profile: Profile,
    pub ports: Vec<String>,
    pub mu: i64,
}

/// Pieces of a boundary reduction and both sides of the index identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryReduction {
    pub mu: i64,
    pub pieces: Vec<Piece>,
    /// Sum of piece indices.
    pub lhs: i64,
    /// `mu - 6 + 4q + 6 delta`.
    pub rhs: i64,
}

/// Boundary-reduces `cb` along `d` and checks the index identity.
pub fn boundary_reduce_mu(complex: &Complex, cb: &Compressionbody, d: &DiscData) -> Result<BoundaryReduction> {
    let minus: Vec<(String, Surface)> =
        cb.minus.iter().map(|p| Ok((p.clone(), complex.port(p)?.surface()))).collect::<Result<_>>()?;
    reduce(complex.plus_surface(cb)?, &minus, cb.tangle, d)
}

/// Boundary reduction of bare boundary data; negative boundary components
/// are addressed by their position as `"0"`, `"1"`, ...
pub fn boundary_reduce_profile(p: &Profile, d: &DiscData) -> Result<BoundaryReduction> {
    let minus: Vec<(String, Surface)> = p.minus.iter().enumerate().map(|(i, s)| (i.to_string(), *s)).collect();
    reduce(p.plus, &minus, p.tangle, d)
}

pub(crate) fn reduce(
    plus: Surface,
    minus: &[(String, Surface)],
    tangle: TangleSummary,
    d: &DiscData,
) -> Result<BoundaryReduction> {
    let original = Profile::new(plus, minus.iter().map(|(_, s)| *s).collect(), tangle);
    if !original.is_valid() {
        return Checks::fail(Check::Precondition, original.violations().join("; "));
    }
    let mu = original.index();
    let surfaces = compress_surface(plus, d)?;
    let cut = d.cut_tangle(tangle)?;
    let all_ports: Vec<String> = minus.iter().map(|(p, _)| p.clone()).collect();
    let surface_of = |id: &String| minus.iter().find(|(p, _)| p == id).map(|(_, s)| *s);

    let pieces: Vec<(Surface, Vec<String>, TangleSummary)> = match &d.split {
        None => vec![(surfaces[0], all_ports.clone(), cut)],
        Some(Split { near, far }) => {
            let mut listed: Vec<&String> = near.ports.iter().chain(&far.ports).collect();
            listed.sort();
            let mut expected: Vec<&String> = all_ports.iter().collect();
            expected.sort();
            if listed != expected {
                return Checks::fail(Check::Precondition, format!("split ports {listed:?} do not partition {expected:?}"));
            }
            if near.tangle + far.tangle != cut {
                return Checks::fail(
                    Check::Precondition,
                    format!("split tangles {} + {} do not sum to {cut}", near.tangle, far.tangle),
                );
            }
            vec![
                (surfaces[0], near.ports.clone(), near.tangle),
                (surfaces[1], far.ports.clone(), far.tangle),
            ]
        }
    };

    let mut out = Vec::with_capacity(pieces.len());
    for (s, ports, t) in pieces {
        let profile = Profile::new(s, ports.iter().map(|p| surface_of(p).unwrap()).collect(), t);
        let problems = profile.violations();
        if !problems.is_empty() {
            return Checks::fail(Check::BoundaryReduction, format!("piece {s:?}: {}", problems.join("; ")));
        }
        let piece_mu = profile.index();
        if d.separating && profile.minus.is_empty() && profile.is_ball_shaped() && piece_mu == 4 * d.q {
            return Checks::fail(Check::BoundaryReduction, "disc cuts off a trivial ball");
        }
        out.push(Piece { profile, ports, mu: piece_mu });
    }

    let lhs: i64 = out.iter().map(|p| p.mu).sum();
    let rhs = mu - 6 + 4 * d.q + 6 * d.delta();
    let mut checks = Checks::default();
    checks.ensure(Check::BoundaryReduction, lhs == rhs, || format!("{lhs} != {rhs}"))?;
    for p in &out {
        checks.ensure(Check::PieceIndexDecrease, p.mu < mu, || format!("piece index {} not below {mu}", p.mu))?;
    }
    Ok(BoundaryReduction { mu, pieces: out, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn part(genus: i64, punctures: i64, ports: &[&str], tangle: TangleSummary) -> SidePart {
        SidePart { genus, punctures, ports: ports.iter().map(|s| s.to_string()).collect(), tangle }
    }

    #[test]
    fn compress_examples() {
        let sep = DiscData::separating(
            0,
            None,
            part(0, 0, &[], TangleSummary::EMPTY),
            part(0, 0, &[], TangleSummary::EMPTY),
        );
        assert_eq!(compress_surface(Surface::sphere(0), &sep).unwrap(), vec![Surface::sphere(0); 2]);
        let d = DiscData::non_separating(0, None);
        assert_eq!(compress_surface(Surface::new(1, 0), &d).unwrap(), vec![Surface::sphere(0)]);
        let d = DiscData::non_separating(1, Some(ArcKind::Bridge));
        assert_eq!(compress_surface(Surface::new(2, 3), &d).unwrap(), vec![Surface::new(1, 5)]);
        assert!(compress_surface(Surface::sphere(4), &DiscData::non_separating(0, None)).is_err());
    }

    #[test]
    fn solid_torus_meridian() {
        let p = Profile::new(Surface::new(1, 0), vec![], TangleSummary::EMPTY);
        let r = boundary_reduce_profile(&p, &DiscData::non_separating(0, None)).unwrap();
        assert_eq!((r.pieces[0].mu, r.lhs, r.rhs), (0, 0, 0));
    }

    #[test]
    fn genus_two_separating() {
        let p = Profile::new(Surface::new(2, 0), vec![], TangleSummary::EMPTY);
        let d = DiscData::separating(
            0,
            None,
            part(1, 0, &[], TangleSummary::EMPTY),
            part(1, 0, &[], TangleSummary::EMPTY),
        );
        let r = boundary_reduce_profile(&p, &d).unwrap();
        assert_eq!(r.pieces.iter().map(|p| p.mu).collect::<Vec<_>>(), [6, 6]);
        assert_eq!(r.lhs, 12 - 6 + 6);
    }

    #[test]
    fn product_has_no_inessential_ball() {
        let s = Surface::new(1, 2);
        let p = Profile::new(s, vec![s], TangleSummary::verticals(2));
        let d = DiscData::separating(
            0,
            None,
            part(1, 2, &["0"], TangleSummary::verticals(2)),
            part(0, 0, &[], TangleSummary::EMPTY),
        );
        match boundary_reduce_profile(&p, &d) {
            Err(Error::Rejected { check, .. }) => assert_eq!(check, Check::BoundaryReduction),
            other => panic!("{other:?}"),
        }
    }
}
