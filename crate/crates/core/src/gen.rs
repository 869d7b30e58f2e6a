//! Random generation and shrinking of valid complexes.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::ThickDigraph;
use crate::fixtures::Builder;
use crate::model::{BoundaryLevel, Complex, Side, Surface, TangleSummary};
use crate::moves::{apply, Move};
use crate::search::{ExhaustiveProposer, MoveProposer};
use crate::validate::validate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub max_thick: usize,
    pub max_genus: i64,
    pub max_punctures: i64,
    /// Negative-boundary components per compressionbody.
    pub max_ports: usize,
    pub allow_boundary: bool,
    /// Chance, in percent, of appending a thick level whose lower
    /// compressionbody is a product, so that a consolidation applies.
    pub product_percent: u32,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self { max_thick: 4, max_genus: 2, max_punctures: 4, max_ports: 3, allow_boundary: true, product_percent: 25, seed: 0 }
    }
}

impl GenConfig {
    /// Bounds used by the non-negativity sweep.
    pub fn wide() -> Self {
        Self { max_thick: 8, max_genus: 3, max_punctures: 6, max_ports: 3, allow_boundary: true, product_percent: 25, seed: 0 }
    }

    fn sanitized(&self) -> Self {
        Self {
            max_thick: self.max_thick.max(1),
            max_genus: self.max_genus.max(0),
            max_punctures: self.max_punctures.max(0),
            max_ports: self.max_ports.max(1),
            ..self.clone()
        }
    }
}

struct Draft {
    genus: Vec<i64>,
    /// (below, above, genus, punctures)
    thin: Vec<(usize, usize, i64, i64)>,
    /// (thick, side, genus, punctures)
    boundary: Vec<(usize, Side, i64, i64)>,
    /// Thick levels that sit on top of a product over their one thin level.
    products: Vec<usize>,
}

impl Draft {
    fn ports(&self, i: usize, side: Side) -> impl Iterator<Item = (i64, i64)> + '_ {
        let thin = self.thin.iter().filter(move |f| match side {
            Side::Upper => f.0 == i,
            Side::Lower => f.1 == i,
        });
        let bdy = self.boundary.iter().filter(move |b| b.0 == i && b.1 == side);
        thin.map(|f| (f.2, f.3)).chain(bdy.map(|b| (b.2, b.3)))
    }

    fn port_count(&self, i: usize, side: Side) -> usize {
        self.ports(i, side).count()
    }

    fn genus_left(&self, i: usize, side: Side) -> i64 {
        self.genus[i] - self.ports(i, side).map(|p| p.0).sum::<i64>()
    }

    fn punctures(&self, i: usize, side: Side) -> i64 {
        self.ports(i, side).map(|p| p.1).sum()
    }

    fn capacity(&self, i: usize, side: Side) -> i64 {
        let k = self.ports(i, side).filter(|p| p.1 > 0).count() as i64;
        if k == 0 {
            0
        } else {
            k - 1 + self.genus_left(i, side)
        }
    }
}

fn boundary_punctures(rng: &mut impl Rng, genus: i64, max_p: i64) -> Option<i64> {
    if genus == 0 {
        (max_p >= 3).then(|| rng.gen_range(3..=max_p))
    } else {
        Some(rng.gen_range(0..=max_p))
    }
}

fn draft(cfg: &GenConfig, rng: &mut impl Rng) -> Option<Draft> {
    let n = rng.gen_range(1..=cfg.max_thick);
    let mut d = Draft { genus: (0..n).map(|_| rng.gen_range(0..=cfg.max_genus)).collect(), thin: vec![], boundary: vec![], products: vec![] };
    let edge_p = (1.5 / n as f64).min(0.5);
    for j in 1..n {
        let mut targets: Vec<usize> = Vec::new();
        if rng.gen_bool(0.85) {
            targets.push(rng.gen_range(0..j));
        }
        for i in 0..j {
            if rng.gen_bool(edge_p * 0.3) {
                targets.push(i);
            }
        }
        for i in targets {
            if d.port_count(i, Side::Upper) >= cfg.max_ports || d.port_count(j, Side::Lower) >= cfg.max_ports {
                continue;
            }
            let gmax = d.genus_left(i, Side::Upper).min(d.genus_left(j, Side::Lower));
            let g = rng.gen_range(0..=gmax);
            let p = 2 * rng.gen_range(0..=cfg.max_punctures / 2);
            d.thin.push((i, j, g, p));
        }
    }
    if n < cfg.max_thick && rng.gen_ratio(cfg.product_percent.min(100), 100) {
        let i = rng.gen_range(0..n);
        if d.port_count(i, Side::Upper) < cfg.max_ports {
            let g = rng.gen_range(0..=d.genus_left(i, Side::Upper));
            let p = 2 * rng.gen_range(0..=cfg.max_punctures / 2);
            d.genus.push(g);
            d.thin.push((i, n, g, p));
            d.products.push(n);
        }
    }
    let n = d.genus.len();
    if cfg.allow_boundary {
        for i in 0..n {
            for side in [Side::Upper, Side::Lower] {
                if side == Side::Lower && d.products.contains(&i) {
                    continue;
                }
                while d.port_count(i, side) < cfg.max_ports && rng.gen_bool(0.25) {
                    let g = rng.gen_range(0..=d.genus_left(i, side));
                    let Some(p) = boundary_punctures(rng, g, cfg.max_punctures) else { break };
                    d.boundary.push((i, side, g, p));
                }
            }
        }
    }
    // Make the puncture parities of the two sides of every thick level agree.
    for i in 0..n {
        if (d.punctures(i, Side::Upper) - d.punctures(i, Side::Lower)) % 2 == 0 {
            continue;
        }
        let fix = d.boundary.iter().position(|b| {
            b.0 == i && {
                let lo = if b.2 == 0 { 3 } else { 0 };
                b.3 + 1 <= cfg.max_punctures || b.3 - 1 >= lo
            }
        });
        match fix {
            Some(k) => {
                let b = &mut d.boundary[k];
                let lo = if b.2 == 0 { 3 } else { 0 };
                if b.3 + 1 <= cfg.max_punctures {
                    b.3 += 1;
                } else {
                    b.3 -= 1;
                }
                debug_assert!(b.3 >= lo);
            }
            None => return None,
        }
    }
    Some(d)
}

fn tangle_for(rng: &mut impl Rng, p_plus: i64, p_minus: i64, capacity: i64) -> Option<TangleSummary> {
    let lo = (p_minus - 2 * capacity.max(0)).max(0);
    let hi = p_plus.min(p_minus);
    let options: Vec<i64> = (lo..=hi).filter(|v| (p_plus - v) % 2 == 0 && (p_minus - v) % 2 == 0).collect();
    let v = *options.choose(rng)?;
    let loops = i64::from(rng.gen_bool(0.1));
    Some(TangleSummary::new(v, (p_plus - v) / 2, (p_minus - v) / 2, loops))
}

fn realize(d: &Draft, cfg: &GenConfig, rng: &mut impl Rng) -> Option<Complex> {
    let n = d.genus.len();
    let mut b = Builder::new();
    let mut punctures = Vec::with_capacity(n);
    for i in 0..n {
        let (pu, pd) = (d.punctures(i, Side::Upper), d.punctures(i, Side::Lower));
        let lo = (pu - 2 * d.capacity(i, Side::Upper).max(0)).max(pd - 2 * d.capacity(i, Side::Lower).max(0)).max(0);
        let p = if d.products.contains(&i) {
            (pd >= lo && (pd - pu) % 2 == 0).then_some(pd)?
        } else {
            let options: Vec<i64> = (lo..=cfg.max_punctures.max(lo)).filter(|p| (p - pu) % 2 == 0).collect();
            *options.choose(rng)?
        };
        punctures.push(p);
        b = b.thick(&format!("H{i}"), Surface::new(d.genus[i], p));
    }
    for (k, f) in d.thin.iter().enumerate() {
        b = b.thin(&format!("F{k}"), Surface::new(f.2, f.3), &format!("H{}", f.0), &format!("H{}", f.1));
    }
    for (k, x) in d.boundary.iter().enumerate() {
        let drilled = x.2 == 0 && x.3 >= 3 && rng.gen_bool(0.5);
        b = b.boundary(&format!("S{k}"), Surface::new(x.2, x.3), &format!("H{}", x.0), x.1, drilled);
    }
    for i in 0..n {
        for side in [Side::Upper, Side::Lower] {
            let t = if side == Side::Lower && d.products.contains(&i) {
                TangleSummary::verticals(punctures[i])
            } else {
                tangle_for(rng, punctures[i], d.punctures(i, side), d.capacity(i, side))?
            };
            b = b.tangle(&format!("H{i}"), side, t);
        }
    }
    Some(b.build())
}

/// A random valid complex. Thin levels only point from earlier to later
/// thick levels of a random order, so flow lines never close up.
pub fn gen_complex(cfg: &GenConfig, rng: &mut impl Rng) -> Complex {
    let cfg = cfg.sanitized();
    for _ in 0..200 {
        let Some(d) = draft(&cfg, rng) else { continue };
        let Some(c) = realize(&d, &cfg, rng) else { continue };
        if validate(&c).is_valid() {
            return relabel_order(c, rng);
        }
    }
    crate::fixtures::heegaard(rng.gen_range(0..=cfg.max_genus))
}

/// Shuffles thick-level ids so their lexicographic order says nothing
/// about the flow direction.
fn relabel_order(c: Complex, rng: &mut impl Rng) -> Complex {
    let mut perm: Vec<usize> = (0..c.thick.len()).collect();
    perm.shuffle(rng);
    let mut text = c.to_json();
    let ids: Vec<String> = c.thick.iter().map(|t| t.id.clone()).collect();
    for (k, id) in ids.iter().enumerate() {
        text = text.replace(&format!("\"{id}\""), &format!("\"#{}\"", perm[k]));
        text = text.replace(&format!("\"{id}."), &format!("\"#{}.", perm[k]));
    }
    let text = text.replace("\"#", "\"H");
    let mut out = Complex::from_json(&text).expect("relabeled complex parses");
    out.normalize();
    out
}

/// A random move that applies to `complex`, if the exhaustive proposer
/// finds one.
pub fn gen_move(complex: &Complex, rng: &mut impl Rng) -> Option<Move> {
    let mut moves = ExhaustiveProposer::default().propose(complex);
    moves.shuffle(rng);
    moves.into_iter().find(|m| apply(complex, m).is_ok())
}

fn size(c: &Complex) -> (usize, i64, i64) {
    (
        c.thick.len(),
        c.thick.iter().map(|t| t.surface.genus).sum(),
        c.thick.iter().map(|t| t.surface.punctures).sum(),
    )
}

/// The sub-complex on the thick levels in `keep`. Thin levels crossing
/// out of `keep` become boundary levels; spheres meeting the graph at most
/// twice are capped off with a ball instead.
pub fn restrict(c: &Complex, keep: &BTreeSet<String>) -> Option<Complex> {
    let mut out = c.clone();
    let kept_cbs: BTreeSet<String> = c.cbs.iter().filter(|cb| keep.contains(&cb.plus)).map(|cb| cb.id.clone()).collect();
    out.thick.retain(|t| keep.contains(&t.id));
    out.cbs.retain(|cb| kept_cbs.contains(&cb.id));
    out.boundary.retain(|b| kept_cbs.contains(&b.owner));
    let mut crossing = Vec::new();
    out.thin.retain(|f| {
        let (a, b) = (kept_cbs.contains(&f.from_cb), kept_cbs.contains(&f.to_cb));
        if a != b {
            crossing.push((f.clone(), if a { f.from_cb.clone() } else { f.to_cb.clone() }));
        }
        a && b
    });
    for (f, owner) in crossing {
        if f.surface.genus == 0 && f.surface.punctures <= 2 {
            let cb = out.cb_mut(&owner).ok()?;
            cb.minus.retain(|p| *p != f.id);
            let t = &mut cb.tangle;
            match f.surface.punctures {
                0 => {}
                2 if t.verticals >= 2 => {
                    t.verticals -= 2;
                    t.bridges += 1;
                }
                2 if t.ghosts >= 1 => {
                    t.ghosts -= 1;
                    t.loops += 1;
                }
                _ => return None,
            }
        } else {
            out.boundary.push(BoundaryLevel { id: f.id.clone(), surface: f.surface, owner, is_drilled_vertex: false });
        }
    }
    out.certify_all();
    out.normalize();
    validate(&out).is_valid().then_some(out)
}

/// Weakly connected components of the thick digraph.
pub fn components(c: &Complex) -> Vec<BTreeSet<String>> {
    let g = ThickDigraph::new(c);
    let mut parent: BTreeMap<String, String> = g.nodes.iter().map(|n| (n.clone(), n.clone())).collect();
    fn find(p: &mut BTreeMap<String, String>, x: &str) -> String {
        let up = p[x].clone();
        if up == x {
            return up;
        }
        let r = find(p, &up);
        p.insert(x.to_owned(), r.clone());
        r
    }
    for e in &g.edges {
        let (a, b) = (find(&mut parent, &e.from), find(&mut parent, &e.to));
        if a != b {
            parent.insert(a, b);
        }
    }
    let mut groups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for n in &g.nodes {
        let r = find(&mut parent, n);
        groups.entry(r).or_default().insert(n.clone());
    }
    groups.into_values().collect()
}

/// Valid complexes strictly smaller than `c` in (thick levels, total genus,
/// total punctures): dropped components, halves of a complex cut along a
/// separating thin level, and destabilized or unperturbed copies.
pub fn shrink(c: &Complex) -> Vec<Complex> {
    let all: BTreeSet<String> = c.thick.iter().map(|t| t.id.clone()).collect();
    let mut keeps: Vec<BTreeSet<String>> = Vec::new();
    let comps = components(c);
    if comps.len() > 1 {
        for comp in &comps {
            keeps.push(all.difference(comp).cloned().collect());
        }
    }
    for f in &c.thin {
        let mut cut = c.clone();
        cut.thin.retain(|x| x.id != f.id);
        for comp in components(&cut) {
            if comp.len() < all.len() && comps.iter().all(|k| *k != comp) {
                keeps.push(comp.clone());
            }
        }
    }
    let mut out: Vec<Complex> = Vec::new();
    let push = |x: Complex, out: &mut Vec<Complex>| {
        if size(&x) < size(c) && !x.thick.is_empty() && validate(&x).is_valid() && !out.contains(&x) {
            out.push(x);
        }
    };
    for k in keeps {
        if k.is_empty() {
            continue;
        }
        if let Some(x) = restrict(c, &k) {
            push(x, &mut out);
        }
    }
    for t in &c.thick {
        for m in crate::search::destabilizations(c, &t.id) {
            if matches!(m, Move::Destabilize { .. } | Move::Unperturb { .. }) {
                if let Ok(a) = apply(c, &m) {
                    push(a.complex, &mut out);
                }
            }
        }
    }
    out
}
