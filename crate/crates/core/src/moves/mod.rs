//! Thinning moves as certificate-carrying rewrites.
//!
//! Each move names the thick level it acts on and carries whatever the
//! summary cannot determine on its own (disc data, merged tangles, strand
//! patterns). [`apply`] checks every numeric consequence and returns the new
//! complex together with the list of checks that passed.

mod consolidate;
mod destabilize;
mod disc;
mod untelescope;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complexity::{compare, complexity};
use crate::digraph::ThickDigraph;
use crate::error::{Error, Result};
use crate::model::{ArcKind, Complex, Side, TangleSummary};
use crate::validate::validate;

pub use consolidate::{apply_consolidate, consolidate_in_place};
pub use destabilize::{apply_destabilize, apply_undo_removable, apply_unperturb};
pub use disc::{boundary_reduce_mu, boundary_reduce_profile, compress_surface, BoundaryReduction, DiscData, SidePart, Split};
pub use untelescope::{
    apply_untelescope, elementary_thinning_sequence, middle_surface, untelescope_relations, IndexPair,
};

/// Named numeric conditions enforced by the moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Move-specific preconditions: ids, counts, kinds.
    Precondition,
    /// Index identity for boundary-reducing a compressionbody along a disc.
    BoundaryReduction,
    /// Every boundary-reduced piece has smaller index than the original.
    PieceIndexDecrease,
    /// Merged index equals the sum of the merged indices minus 6.
    ConsolidationIndex,
    /// The lower index of the new lower thick level drops.
    LowerPieceDecrease,
    /// The upper index of the new upper thick level drops.
    UpperPieceDecrease,
    /// Lower indices of the two new thick levels sum to the old one plus 6.
    LowerIndexSum,
    /// Upper indices of the two new thick levels sum to the old one plus 6.
    UpperIndexSum,
    /// Lower index of the lower new level is below the old lower index.
    LowerIndexDrop,
    /// Upper index of the lower new level equals the old upper index.
    UpperIndexKept,
    /// Lower index of the upper new level equals the old lower index.
    LowerIndexKept,
    /// Upper index of the upper new level is below the old upper index.
    UpperIndexDrop,
    /// Destabilizing lowers the index of the upper compressionbody.
    DestabUpperDecrease,
    /// Destabilizing lowers the index of the lower compressionbody.
    DestabLowerDecrease,
    ComplexityDecrease,
    Acyclic,
    /// The thin level created between the two compressing discs survives
    /// the consolidations that follow.
    DoublySpottedPersists,
    /// No product compressionbody is adjacent to a thin level afterwards.
    NoProductsRemain,
    /// At least one thin level remains after a thinning sequence.
    ThinNonEmpty,
    /// The result passes validation.
    Closure,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Precondition => "precondition",
            Check::BoundaryReduction => "boundary-reduction",
            Check::PieceIndexDecrease => "piece-index-decrease",
            Check::ConsolidationIndex => "consolidation-index",
            Check::LowerPieceDecrease => "lower-piece-decrease",
            Check::UpperPieceDecrease => "upper-piece-decrease",
            Check::LowerIndexSum => "lower-index-sum",
            Check::UpperIndexSum => "upper-index-sum",
            Check::LowerIndexDrop => "lower-index-drop",
            Check::UpperIndexKept => "upper-index-kept",
            Check::LowerIndexKept => "lower-index-kept",
            Check::UpperIndexDrop => "upper-index-drop",
            Check::DestabUpperDecrease => "destab-upper-decrease",
            Check::DestabLowerDecrease => "destab-lower-decrease",
            Check::ComplexityDecrease => "complexity-decrease",
            Check::Acyclic => "acyclic",
            Check::DoublySpottedPersists => "doubly-spotted-persists",
            Check::NoProductsRemain => "no-products-remain",
            Check::ThinNonEmpty => "thin-non-empty",
            Check::Closure => "closure",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The six generalized destabilizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DestabKind {
    Stab,
    MeridStab,
    Bdy,
    MeridBdy,
    GhostBdy,
    MeridGhostBdy,
}

impl DestabKind {
    pub const ALL: [DestabKind; 6] = [
        DestabKind::Stab,
        DestabKind::MeridStab,
        DestabKind::Bdy,
        DestabKind::MeridBdy,
        DestabKind::GhostBdy,
        DestabKind::MeridGhostBdy,
    ];

    /// Punctures of the disc that cancels the stabilization.
    pub fn q(self) -> i64 {
        match self {
            DestabKind::MeridStab | DestabKind::MeridBdy | DestabKind::MeridGhostBdy => 1,
            _ => 0,
        }
    }

    pub fn is_boundary(self) -> bool {
        !matches!(self, DestabKind::Stab | DestabKind::MeridStab)
    }

    pub fn is_ghost(self) -> bool {
        matches!(self, DestabKind::GhostBdy | DestabKind::MeridGhostBdy)
    }
}

/// How two strands combine when a perturbation is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeCase {
    BridgeBridge,
    VerticalBridge,
}

/// Tangle reassignment when a removable component is undone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum Redistribution {
    /// One bridge on each side becomes a core loop on `loop_side`.
    Loop {
        #[serde(default = "default_loop_side")]
        loop_side: Side,
    },
    /// Both tangles given explicitly.
    General { upper: TangleSummary, lower: TangleSummary },
}

fn default_loop_side() -> Side {
    Side::Lower
}

impl Default for Redistribution {
    fn default() -> Self {
        Redistribution::Loop { loop_side: Side::Lower }
    }
}

/// Two compressing discs on opposite sides of a thick level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Untelescope {
    pub thick: String,
    /// Disc in the lower compressionbody.
    pub disc_minus: DiscData,
    /// Disc in the upper compressionbody.
    pub disc_plus: DiscData,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Remove `thick` and `thin` across the product between them.
    Consolidate {
        thick: String,
        thin: String,
        /// Tangle of the merged compressionbody; defaults to the fewest-ghost summary.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tangle: Option<TangleSummary>,
    },
    Untelescope(Untelescope),
    /// Untelescope, then consolidate the products it creates and exposes.
    ThinningSequence(Untelescope),
    Destabilize {
        thick: String,
        destab: DestabKind,
        /// Side holding the boundary ports, or the side whose strand is cut.
        #[serde(default = "default_side")]
        side: Side,
        /// Boundary levels moved across.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        ports: Vec<String>,
        /// Number of ghost arcs moved across.
        #[serde(default, skip_serializing_if = "is_zero")]
        ghosts: i64,
        /// Strand cut by a meridional stabilization.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cut: Option<ArcKind>,
        /// Tangle of the receiving side; defaults to the fewest-ghost summary.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        far_tangle: Option<TangleSummary>,
    },
    Unperturb {
        thick: String,
        /// Side whose bridge disc is cancelled; the strands merge on the other side.
        side: Side,
        merge_case: MergeCase,
    },
    UndoRemovable {
        thick: String,
        #[serde(default)]
        redistribution: Redistribution,
    },
}

fn default_side() -> Side {
    Side::Upper
}

fn is_zero(n: &i64) -> bool {
    *n == 0
}

impl Move {
    pub fn thick(&self) -> &str {
        match self {
            Move::Consolidate { thick, .. }
            | Move::Destabilize { thick, .. }
            | Move::Unperturb { thick, .. }
            | Move::UndoRemovable { thick, .. } => thick,
            Move::Untelescope(u) | Move::ThinningSequence(u) => &u.thick,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Move::Consolidate { .. } => "consolidate",
            Move::Untelescope(_) => "untelescope",
            Move::ThinningSequence(_) => "thinning_sequence",
            Move::Destabilize { .. } => "destabilize",
            Move::Unperturb { .. } => "unperturb",
            Move::UndoRemovable { .. } => "undo_removable",
        }
    }

    /// Moves that remove structure without splitting a thick level.
    pub fn is_reducing(&self) -> bool {
        !matches!(self, Move::Untelescope(_) | Move::ThinningSequence(_))
    }

    pub fn stab(thick: &str) -> Move {
        Move::Destabilize {
            thick: thick.into(),
            destab: DestabKind::Stab,
            side: Side::Upper,
            ports: vec![],
            ghosts: 0,
            cut: None,
            far_tangle: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("move serializes")
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Consolidate { thick, thin, .. } => write!(f, "consolidate {thick} across {thin}"),
            Move::Untelescope(u) => write!(f, "untelescope {}", u.thick),
            Move::ThinningSequence(u) => write!(f, "thinning sequence at {}", u.thick),
            Move::Destabilize { thick, destab, side, .. } => write!(f, "{destab:?} at {thick} ({side:?})"),
            Move::Unperturb { thick, side, merge_case } => write!(f, "unperturb {thick} ({side:?}, {merge_case:?})"),
            Move::UndoRemovable { thick, .. } => write!(f, "undo removable at {thick}"),
        }
    }
}

/// A move's result and the checks it passed.
#[derive(Debug, Clone)]
pub struct Applied {
    pub complex: Complex,
    pub checks: Vec<Check>,
}

/// Checks passed so far; the first failure aborts the move.
#[derive(Debug, Default)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn ensure(&mut self, check: Check, ok: bool, detail: impl FnOnce() -> String) -> Result<()> {
        if ok {
            if !self.0.contains(&check) {
                self.0.push(check);
            }
            Ok(())
        } else {
            Err(Error::rejected(check, detail()))
        }
    }

    pub fn fail<T>(check: Check, detail: impl Into<String>) -> Result<T> {
        Err(Error::rejected(check, detail))
    }
}

pub(crate) fn require_valid(complex: &Complex) -> Result<()> {
    let report = validate(complex);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid(report))
    }
}

/// Acyclicity, validity and strict complexity decrease of `after`.
pub(crate) fn post_checks(before: &Complex, after: &Complex, checks: &mut Checks) -> Result<()> {
    let cycle = ThickDigraph::new(after).find_cycle();
    checks.ensure(Check::Acyclic, cycle.is_none(), || format!("closed flow line {cycle:?}"))?;
    let report = validate(after);
    checks.ensure(Check::Closure, report.is_valid(), || report.to_string())?;
    let (b, a) = (complexity(before)?, complexity(after)?);
    checks.ensure(Check::ComplexityDecrease, compare(&a, &b) == Ordering::Less, || format!("{a} is not below {b}"))
}

/// Applies `m` to a valid complex.
pub fn apply(complex: &Complex, m: &Move) -> Result<Applied> {
    require_valid(complex)?;
    let mut checks = Checks::default();
    let mut out = match m {
        Move::Consolidate { thick, thin, tangle } => apply_consolidate(complex, thick, thin, *tangle, &mut checks)?,
        Move::Untelescope(u) => apply_untelescope(complex, u, &mut checks)?,
        Move::ThinningSequence(u) => elementary_thinning_sequence(complex, u, &mut checks)?,
        Move::Destabilize { .. } => apply_destabilize(complex, m, &mut checks)?,
        Move::Unperturb { thick, side, merge_case } => apply_unperturb(complex, thick, *side, *merge_case, &mut checks)?,
        Move::UndoRemovable { thick, redistribution } => {
            apply_undo_removable(complex, thick, redistribution, &mut checks)?
        }
    };
    out.normalize();
    post_checks(complex, &out, &mut checks)?;
    Ok(Applied { complex: out, checks: checks.0 })
}

/// Whether a complex admits no consolidation and `moves` holds no reducing
/// move that applies. Returns the first applicable move as a witness.
pub fn is_reduced(complex: &Complex, moves: &[Move]) -> (bool, Option<Move>) {
    if let Some(m) = consolidation_candidates(complex).into_iter().next() {
        return (false, Some(m));
    }
    for m in moves.iter().filter(|m| m.is_reducing()) {
        if apply(complex, m).is_ok() {
            return (false, Some(m.clone()));
        }
    }
    (true, None)
}

/// Every product-certified compressionbody whose only negative boundary
/// component is a thin level, as a consolidation.
pub fn consolidation_candidates(complex: &Complex) -> Vec<Move> {
    let mut out = Vec::new();
    for t in &complex.thick {
        for side in [Side::Upper, Side::Lower] {
            let Ok(cb) = complex.cb(t.cb(side)) else { continue };
            if cb.product_certificate && cb.minus.len() == 1 && complex.thin_level(&cb.minus[0]).is_ok() {
                out.push(Move::Consolidate { thick: t.id.clone(), thin: cb.minus[0].clone(), tangle: None });
            }
        }
    }
    out
}
