//! Domain types for drilled-form compressionbodies and oriented multiple
//! bridge surfaces.
//!
//! A [`Complex`] is a summary: every surface is recorded by genus and
//! puncture count, every compressionbody by its boundary ports and a count
//! of the four tangle-piece types. Nothing here is an embedding; the
//! structural checks live in [`crate::validate`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed, connected, orientable surface meeting the graph in
/// `punctures` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    pub genus: i64,
    pub punctures: i64,
}

impl Surface {
    pub const fn new(genus: i64, punctures: i64) -> Self {
        Self { genus, punctures }
    }

    pub const fn sphere(punctures: i64) -> Self {
        Self::new(0, punctures)
    }

    pub fn is_sphere(&self) -> bool {
        self.genus == 0
    }

    pub fn euler_char(&self) -> i64 {
        euler_char(*self)
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.genus, self.punctures)
    }
}

/// Euler characteristic `2 - 2g` of a closed orientable surface.
pub fn euler_char(s: Surface) -> i64 {
    2 - 2 * s.genus
}

/// Counts of the tangle pieces inside a drilled compressionbody.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TangleSummary {
    /// Vertical arcs, one end on the positive boundary and one on the negative.
    #[serde(rename = "v")]
    pub verticals: i64,
    /// Bridge arcs, both ends on the positive boundary.
    #[serde(rename = "b")]
    pub bridges: i64,
    /// Ghost arcs, both ends on the negative boundary.
    #[serde(rename = "gh")]
    pub ghosts: i64,
    /// Core loops.
    pub loops: i64,
}

impl TangleSummary {
    pub const EMPTY: TangleSummary = TangleSummary::new(0, 0, 0, 0);
    pub const ARC: TangleSummary = TangleSummary::new(0, 1, 0, 0);

    pub const fn new(verticals: i64, bridges: i64, ghosts: i64, loops: i64) -> Self {
        Self { verticals, bridges, ghosts, loops }
    }

    pub fn verticals(v: i64) -> Self {
        Self::new(v, 0, 0, 0)
    }

    /// The summary with as many verticals as possible, given the puncture
    /// counts on the two sides. `None` when the parities disagree.
    pub fn fewest_ghosts(p_plus: i64, p_minus: i64) -> Option<Self> {
        if p_plus < 0 || p_minus < 0 || (p_plus - p_minus) % 2 != 0 {
            return None;
        }
        let v = p_plus.min(p_minus);
        Some(Self::new(v, (p_plus - v) / 2, (p_minus - v) / 2, 0))
    }

    pub fn is_non_negative(&self) -> bool {
        self.verticals >= 0 && self.bridges >= 0 && self.ghosts >= 0 && self.loops >= 0
    }

    pub fn count(&self, kind: ArcKind) -> i64 {
        match kind {
            ArcKind::Vertical => self.verticals,
            ArcKind::Bridge => self.bridges,
            ArcKind::Ghost => self.ghosts,
            ArcKind::Loop => self.loops,
        }
    }

    /// Tangle after cutting one piece of the given kind at a single point.
    ///
    /// A bridge splits into two bridges, a vertical into a vertical and a
    /// bridge, a ghost into two verticals and a loop into one bridge.
    pub fn cut(&self, kind: ArcKind) -> TangleSummary {
        let mut t = *self;
        match kind {
            ArcKind::Bridge => t.bridges += 1,
            ArcKind::Vertical => t.bridges += 1,
            ArcKind::Ghost => {
                t.ghosts -= 1;
                t.verticals += 2;
            }
            ArcKind::Loop => {
                t.loops -= 1;
                t.bridges += 1;
            }
        }
        t
    }
}

impl std::ops::Add for TangleSummary {
    type Output = TangleSummary;

    fn add(self, o: TangleSummary) -> TangleSummary {
        TangleSummary::new(
            self.verticals + o.verticals,
            self.bridges + o.bridges,
            self.ghosts + o.ghosts,
            self.loops + o.loops,
        )
    }
}

impl std::fmt::Display for TangleSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.verticals, self.bridges, self.ghosts, self.loops)
    }
}

/// The four kinds of tangle piece a disc can meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    Vertical,
    Bridge,
    Ghost,
    Loop,
}

impl ArcKind {
    pub const ALL: [ArcKind; 4] = [ArcKind::Vertical, ArcKind::Bridge, ArcKind::Ghost, ArcKind::Loop];
}

/// Which of the two compressionbodies adjacent to a thick level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compressionbody {
    pub id: String,
    /// Thick level whose copy is the positive boundary.
    pub plus: String,
    /// Thin and boundary levels making up the negative boundary.
    #[serde(default)]
    pub minus: Vec<String>,
    pub tangle: TangleSummary,
    #[serde(default)]
    pub product_certificate: bool,
    #[serde(default)]
    pub ball_certificate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinLevel {
    pub id: String,
    pub surface: Surface,
    /// Upper compressionbody the transverse orientation points out of.
    pub from_cb: String,
    /// Lower compressionbody the transverse orientation points into.
    pub to_cb: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLevel {
    pub id: String,
    pub surface: Surface,
    pub owner: String,
    #[serde(default)]
    pub is_drilled_vertex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickLevel {
    pub id: String,
    pub surface: Surface,
    pub upper_cb: String,
    pub lower_cb: String,
}

impl ThickLevel {
    pub fn cb(&self, side: Side) -> &str {
        match side {
            Side::Upper => &self.upper_cb,
            Side::Lower => &self.lower_cb,
        }
    }
}

/// An oriented multiple bridge surface, in drilled form.
///
/// `reducible` waives the requirement that boundary spheres meet the graph
/// at least three times; it exists so that reducible configurations can be
/// encoded and measured.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complex {
    #[serde(default)]
    pub thick: Vec<ThickLevel>,
    #[serde(default)]
    pub thin: Vec<ThinLevel>,
    #[serde(default)]
    pub boundary: Vec<BoundaryLevel>,
    #[serde(default)]
    pub cbs: Vec<Compressionbody>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reducible: bool,
}

/// A port on the negative boundary of a compressionbody.
#[derive(Debug, Clone, Copy)]
pub enum Port<'a> {
    Thin(&'a ThinLevel),
    Boundary(&'a BoundaryLevel),
}

impl<'a> Port<'a> {
    pub fn id(&self) -> &'a str {
        match self {
            Port::Thin(t) => &t.id,
            Port::Boundary(b) => &b.id,
        }
    }

    pub fn surface(&self) -> Surface {
        match self {
            Port::Thin(t) => t.surface,
            Port::Boundary(b) => b.surface,
        }
    }
}

impl Complex {
    pub fn thick_level(&self, id: &str) -> Result<&ThickLevel> {
        self.thick.iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownId(id.to_owned()))
    }

    pub fn thin_level(&self, id: &str) -> Result<&ThinLevel> {
        self.thin.iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownId(id.to_owned()))
    }

    pub fn boundary_level(&self, id: &str) -> Result<&BoundaryLevel> {
        self.boundary.iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownId(id.to_owned()))
    }

    pub fn cb(&self, id: &str) -> Result<&Compressionbody> {
        self.cbs.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownId(id.to_owned()))
    }

    pub fn cb_mut(&mut self, id: &str) -> Result<&mut Compressionbody> {
        self.cbs.iter_mut().find(|c| c.id == id).ok_or_else(|| Error::UnknownId(id.to_owned()))
    }

    pub fn port(&self, id: &str) -> Result<Port<'_>> {
        if let Some(t) = self.thin.iter().find(|t| t.id == id) {
            return Ok(Port::Thin(t));
        }
        if let Some(b) = self.boundary.iter().find(|b| b.id == id) {
            return Ok(Port::Boundary(b));
        }
        Err(Error::UnknownId(id.to_owned()))
    }

    /// Surface of the positive boundary of `cb`.
    pub fn plus_surface(&self, cb: &Compressionbody) -> Result<Surface> {
        Ok(self.thick_level(&cb.plus)?.surface)
    }

    pub fn minus_surfaces(&self, cb: &Compressionbody) -> Result<Vec<Surface>> {
        cb.minus.iter().map(|p| self.port(p).map(|p| p.surface())).collect()
    }

    /// Upper or lower compressionbody of a thick level.
    pub fn side_cb(&self, thick: &str, side: Side) -> Result<&Compressionbody> {
        let t = self.thick_level(thick)?;
        self.cb(t.cb(side))
    }

    /// Which side of its thick level `cb` sits on.
    pub fn side_of(&self, cb: &Compressionbody) -> Result<Side> {
        let t = self.thick_level(&cb.plus)?;
        if t.upper_cb == cb.id {
            Ok(Side::Upper)
        } else if t.lower_cb == cb.id {
            Ok(Side::Lower)
        } else {
            Err(Error::UnknownId(cb.id.clone()))
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.thick
            .iter()
            .map(|t| t.id.as_str())
            .chain(self.thin.iter().map(|t| t.id.as_str()))
            .chain(self.boundary.iter().map(|t| t.id.as_str()))
            .chain(self.cbs.iter().map(|t| t.id.as_str()))
    }

    /// A fresh id starting with `prefix` that is not used anywhere in the complex.
    pub fn fresh_id(&self, prefix: &str) -> String {
        let used: std::collections::HashSet<&str> = self.ids().collect();
        if !used.contains(prefix) {
            return prefix.to_owned();
        }
        (1..)
            .map(|n| format!("{prefix}{n}"))
            .find(|c| !used.contains(c.as_str()))
            .expect("unbounded id space")
    }

    /// Sorts every collection by id so that equal complexes serialize equally.
    pub fn normalize(&mut self) {
        self.thick.sort_by(|a, b| a.id.cmp(&b.id));
        self.thin.sort_by(|a, b| a.id.cmp(&b.id));
        self.boundary.sort_by(|a, b| a.id.cmp(&b.id));
        self.cbs.sort_by(|a, b| a.id.cmp(&b.id));
        for cb in &mut self.cbs {
            cb.minus.sort();
        }
    }

    /// The same complex with every transverse orientation reversed.
    pub fn reversed(&self) -> Complex {
        let mut c = self.clone();
        for t in &mut c.thick {
            std::mem::swap(&mut t.upper_cb, &mut t.lower_cb);
        }
        for f in &mut c.thin {
            std::mem::swap(&mut f.from_cb, &mut f.to_cb);
        }
        c
    }

    pub fn from_json(text: &str) -> Result<Complex> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }
}

/// Numeric data of a compressionbody detached from any complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub plus: Surface,
    pub minus: Vec<Surface>,
    pub tangle: TangleSummary,
}

impl Profile {
    pub fn new(plus: Surface, minus: Vec<Surface>, tangle: TangleSummary) -> Self {
        Self { plus, minus, tangle }
    }

    pub fn minus_genus(&self) -> i64 {
        self.minus.iter().map(|s| s.genus).sum()
    }

    pub fn minus_punctures(&self) -> i64 {
        self.minus.iter().map(|s| s.punctures).sum()
    }

    /// Non-separating handles available beyond a spanning tree of the
    /// trivial pieces.
    pub fn handle_surplus(&self) -> i64 {
        self.plus.genus - self.minus_genus()
    }

    /// The largest ghost count the boundary data can support. Ghost arcs
    /// end on punctured negative boundary components; those beyond a
    /// spanning forest on them each need a non-separating handle.
    pub fn ghost_capacity(&self) -> i64 {
        let punctured = self.minus.iter().filter(|s| s.punctures > 0).count() as i64;
        if punctured == 0 {
            0
        } else {
            punctured - 1 + self.handle_surplus()
        }
    }

    pub fn index(&self) -> i64 {
        index_of(self.plus, &self.minus)
    }

    /// Boundary data of a trivial product.
    pub fn is_product_shaped(&self) -> bool {
        self.minus.len() == 1
            && self.minus[0] == self.plus
            && self.tangle.bridges == 0
            && self.tangle.ghosts == 0
            && self.tangle.loops == 0
    }

    /// Boundary data of a trivial ball: empty or a single unknotted arc.
    pub fn is_ball_shaped(&self) -> bool {
        self.minus.is_empty()
            && self.plus.genus == 0
            && (self.tangle == TangleSummary::EMPTY && self.plus.punctures == 0
                || self.tangle == TangleSummary::ARC && self.plus.punctures == 2)
    }

    /// Every numeric condition a compressionbody summary must satisfy,
    /// reported as human-readable reasons.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let t = &self.tangle;
        if self.plus.genus < 0 || self.plus.punctures < 0 || self.minus.iter().any(|s| s.genus < 0 || s.punctures < 0) {
            out.push("negative surface data".to_owned());
        }
        if !t.is_non_negative() {
            out.push(format!("negative tangle count {t}"));
            return out;
        }
        if self.plus.punctures != t.verticals + 2 * t.bridges {
            out.push(format!(
                "puncture conservation up: {} != {} + 2*{}",
                self.plus.punctures, t.verticals, t.bridges
            ));
        }
        if self.minus_punctures() != t.verticals + 2 * t.ghosts {
            out.push(format!(
                "puncture conservation down: {} != {} + 2*{}",
                self.minus_punctures(),
                t.verticals,
                t.ghosts
            ));
        }
        if self.handle_surplus() < 0 {
            out.push(format!(
                "genus feasibility: {} < {}",
                self.plus.genus,
                self.minus_genus()
            ));
        }
        if t.ghosts > self.ghost_capacity().max(0) {
            out.push(format!(
                "ghost forest: {} ghost arcs exceed capacity {}",
                t.ghosts,
                self.ghost_capacity().max(0)
            ));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Index of a compressionbody with the given boundary data:
/// `3(-chi(+) + sum chi(-)) + 2(p(+) - sum p(-)) + 6`.
pub fn index_of(plus: Surface, minus: &[Surface]) -> i64 {
    let chi_minus: i64 = minus.iter().map(|s| euler_char(*s)).sum();
    let p_minus: i64 = minus.iter().map(|s| s.punctures).sum();
    3 * (-euler_char(plus) + chi_minus) + 2 * (plus.punctures - p_minus) + 6
}

/// Index of the empty compressionbody.
pub const fn mu_empty() -> i64 {
    0
}

/// Index of a compressionbody of `complex`.
pub fn mu(cb: &Compressionbody, complex: &Complex) -> Result<i64> {
    let profile = complex.profile(cb)?;
    let problems = profile.violations();
    if !problems.is_empty() {
        return Err(Error::InvalidCompressionbody { id: cb.id.clone(), reasons: problems });
    }
    Ok(profile.index())
}

impl Complex {
    pub fn profile(&self, cb: &Compressionbody) -> Result<Profile> {
        Ok(Profile::new(self.plus_surface(cb)?, self.minus_surfaces(cb)?, cb.tangle))
    }

    /// Sets the certificates of `cb` from its boundary data.
    pub fn certify(&mut self, cb: &str) -> Result<()> {
        let profile = self.profile(self.cb(cb)?)?;
        let c = self.cb_mut(cb)?;
        c.product_certificate = profile.is_product_shaped();
        c.ball_certificate = profile.is_ball_shaped();
        Ok(())
    }

    /// Sets every certificate from boundary data; unresolved bodies are skipped.
    pub fn certify_all(&mut self) {
        let ids: Vec<String> = self.cbs.iter().map(|c| c.id.clone()).collect();
        for id in ids {
            let _ = self.certify(&id);
        }
    }

    /// Index of the compressionbody on `side` of thick level `thick`.
    pub fn side_mu(&self, thick: &str, side: Side) -> Result<i64> {
        mu(self.side_cb(thick, side)?, self)
    }
}
