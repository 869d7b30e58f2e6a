//! Driving complexes to reduced form and exploring the rewrite order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_hash;
use crate::complexity::{complexity, ComplexityVector};
use crate::error::{Error, Result};
use crate::model::{ArcKind, Complex, Compressionbody, Side, Surface, TangleSummary};
use crate::moves::{
    apply, boundary_reduce_mu, consolidation_candidates, is_reduced, DestabKind, DiscData, MergeCase, Move,
    Redistribution, SidePart, Untelescope,
};

/// Source of candidate moves. The engine validates every candidate itself.
pub trait MoveProposer: Sync {
    fn propose(&self, complex: &Complex) -> Vec<Move>;
}

/// Proposes nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct EmptyProposer;

impl MoveProposer for EmptyProposer {
    fn propose(&self, _: &Complex) -> Vec<Move> {
        Vec::new()
    }
}

/// Proposes a fixed list of moves at every step.
#[derive(Debug, Clone, Default)]
pub struct ScriptedProposer {
    pub moves: Vec<Move>,
}

impl ScriptedProposer {
    pub fn new(moves: Vec<Move>) -> Self {
        Self { moves }
    }
}

impl MoveProposer for ScriptedProposer {
    fn propose(&self, _: &Complex) -> Vec<Move> {
        self.moves.clone()
    }
}

/// Every move whose certificate is consistent with the numeric data, up to
/// a cap on the number of disc pairs tried. This is a superset of the moves
/// that exist topologically.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveProposer {
    /// Disc candidates kept per compressionbody.
    pub max_discs: usize,
    /// Disc pairs proposed per thick level.
    pub max_untelescopes: usize,
}

impl Default for ExhaustiveProposer {
    fn default() -> Self {
        Self { max_discs: 48, max_untelescopes: 24 }
    }
}

impl MoveProposer for ExhaustiveProposer {
    fn propose(&self, c: &Complex) -> Vec<Move> {
        let mut out = consolidation_candidates(c);
        for t in &c.thick {
            out.extend(destabilizations(c, &t.id));
            out.extend(self.untelescopes(c, &t.id));
        }
        out
    }
}

fn destab(thick: &str, kind: DestabKind, side: Side, ports: Vec<String>, ghosts: i64, cut: Option<ArcKind>) -> Move {
    Move::Destabilize { thick: thick.into(), destab: kind, side, ports, ghosts, cut, far_tangle: None }
}

/// Destabilizations, unperturbings and removable pairs at `thick` that are
/// numerically possible.
pub fn destabilizations(c: &Complex, thick: &str) -> Vec<Move> {
    let Ok(t) = c.thick_level(thick) else { return vec![] };
    let mut out = Vec::new();
    if t.surface.genus >= 1 {
        out.push(Move::stab(thick));
    }
    for side in [Side::Upper, Side::Lower] {
        let Ok(cb) = c.side_cb(thick, side) else { continue };
        if t.surface.genus >= 1 {
            for kind in ArcKind::ALL {
                if cb.tangle.count(kind) >= 1 {
                    out.push(destab(thick, DestabKind::MeridStab, side, vec![], 0, Some(kind)));
                }
            }
        }
        let bdy: Vec<String> = cb.minus.iter().filter(|p| c.boundary_level(p).is_ok()).cloned().collect();
        for s in &bdy {
            out.push(destab(thick, DestabKind::Bdy, side, vec![s.clone()], 0, None));
            out.push(destab(thick, DestabKind::MeridBdy, side, vec![s.clone()], 0, None));
        }
        let mut subsets: Vec<Vec<String>> = vec![vec![]];
        subsets.extend(bdy.iter().map(|s| vec![s.clone()]));
        for (i, a) in bdy.iter().enumerate() {
            for b in &bdy[i + 1..] {
                subsets.push(vec![a.clone(), b.clone()]);
            }
        }
        for gamma in 1..=cb.tangle.ghosts.min(2) {
            for s in &subsets {
                if gamma >= 1.max(s.len() as i64 - 1) {
                    out.push(destab(thick, DestabKind::GhostBdy, side, s.clone(), gamma, None));
                    out.push(destab(thick, DestabKind::MeridGhostBdy, side, s.clone(), gamma, None));
                }
            }
        }
        for merge_case in [MergeCase::BridgeBridge, MergeCase::VerticalBridge] {
            out.push(Move::Unperturb { thick: thick.into(), side, merge_case });
        }
        out.push(Move::UndoRemovable { thick: thick.into(), redistribution: Redistribution::Loop { loop_side: side } });
    }
    out
}

/// Every disc certificate whose numbers are locally consistent with the
/// boundary data: each choice of q and cut strand, the non-separating disc
/// when there is genus, and every split of genus, punctures, ports and
/// strands for a separating one. Nothing here checks the resulting pieces.
pub fn candidate_discs(plus: Surface, minus: &[(String, Surface)], tangle: TangleSummary) -> Vec<DiscData> {
    let mut found = Vec::new();
    let k = minus.len();
    if k > 10 {
        return found;
    }
    for q in 0..=1 {
        let cuts: Vec<Option<ArcKind>> = if q == 0 {
            vec![None]
        } else {
            ArcKind::ALL.into_iter().filter(|kind| tangle.count(*kind) >= 1).map(Some).collect()
        };
        for cut in cuts {
            if plus.genus >= 1 {
                found.push(DiscData::non_separating(q, cut));
            }
            let t = match cut {
                Some(kind) => tangle.cut(kind),
                None => tangle,
            };
            for mask in 0u32..(1 << k) {
                let near_ports: Vec<String> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| minus[i].0.clone()).collect();
                let far_ports: Vec<String> = (0..k).filter(|i| mask & (1 << i) == 0).map(|i| minus[i].0.clone()).collect();
                let near_minus: i64 = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| minus[i].1.punctures).sum();
                for g1 in 0..=plus.genus {
                    for p1 in 0..=plus.punctures {
                        for v1 in 0..=t.verticals {
                            let (b2, gh2) = (p1 + q - v1, near_minus - v1);
                            if b2 < 0 || gh2 < 0 || b2 % 2 != 0 || gh2 % 2 != 0 {
                                continue;
                            }
                            let loop_splits: Vec<i64> = if t.loops == 0 { vec![0] } else { vec![0, t.loops] };
                            for l1 in loop_splits {
                                let near_t = TangleSummary::new(v1, b2 / 2, gh2 / 2, l1);
                                let far_t =
                                    TangleSummary::new(t.verticals - v1, t.bridges - b2 / 2, t.ghosts - gh2 / 2, t.loops - l1);
                                if !far_t.is_non_negative() {
                                    continue;
                                }
                                let near = SidePart { genus: g1, punctures: p1, ports: near_ports.clone(), tangle: near_t };
                                let far = SidePart {
                                    genus: plus.genus - g1,
                                    punctures: plus.punctures - p1,
                                    ports: far_ports.clone(),
                                    tangle: far_t,
                                };
                                found.push(DiscData::separating(q, cut, near, far));
                            }
                        }
                    }
                }
            }
        }
    }
    found
}

impl ExhaustiveProposer {
    /// Discs in `cb` that pass the boundary-reduction checks.
    pub fn discs(&self, c: &Complex, cb: &Compressionbody) -> Vec<DiscData> {
        let Ok(plus) = c.plus_surface(cb) else { return vec![] };
        let Ok(minus) = cb.minus.iter().map(|p| Ok((p.clone(), c.port(p)?.surface()))).collect::<Result<Vec<_>>>() else {
            return vec![];
        };
        candidate_discs(plus, &minus, cb.tangle)
            .into_iter()
            .filter(|d| boundary_reduce_mu(c, cb, d).is_ok())
            .take(self.max_discs)
            .collect()
    }

    /// Disc pairs at `thick` whose middle surface exists, as thinning sequences.
    pub fn untelescopes(&self, c: &Complex, thick: &str) -> Vec<Move> {
        let Ok(t) = c.thick_level(thick) else { return vec![] };
        let (Ok(lower), Ok(upper)) = (c.cb(&t.lower_cb), c.cb(&t.upper_cb)) else { return vec![] };
        let minus = self.discs(c, lower);
        if minus.is_empty() {
            return vec![];
        }
        let plus = self.discs(c, upper);
        let mut out = Vec::new();
        for dm in &minus {
            for dp in &plus {
                if out.len() >= self.max_untelescopes {
                    return out;
                }
                if crate::moves::middle_surface(t.surface, dm, dp).is_ok() {
                    out.push(Move::ThinningSequence(Untelescope {
                        thick: thick.into(),
                        disc_minus: dm.clone(),
                        disc_plus: dp.clone(),
                    }));
                }
            }
        }
        out
    }
}

/// Move selection rule for [`thin`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// The first candidate that applies.
    #[default]
    First,
    /// The candidate with the smallest resulting complexity, ties broken by
    /// canonical hash.
    Greedy,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    /// Canonical hash of the complex after the move.
    pub hash: String,
    #[serde(rename = "move")]
    pub applied: Move,
    pub vector: ComplexityVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThinningTrace {
    pub initial: ComplexityVector,
    pub steps: Vec<TraceStep>,
    /// The last complex admits no further move.
    pub terminal: bool,
    /// Proposed certificates that were rejected along the way.
    pub skipped: usize,
}

impl ThinningTrace {
    pub fn is_strictly_decreasing(&self) -> bool {
        let mut prev = &self.initial;
        for s in &self.steps {
            if s.vector >= *prev {
                return false;
            }
            prev = &s.vector;
        }
        true
    }
}

pub const DEFAULT_CAP: usize = 1_000_000;

/// Candidates from `proposer`, plus every consolidation, without repeats.
fn candidates(c: &Complex, proposer: &dyn MoveProposer) -> Vec<Move> {
    let mut all = consolidation_candidates(c);
    for m in proposer.propose(c) {
        if !all.contains(&m) {
            all.push(m);
        }
    }
    all
}

fn choose(c: &Complex, moves: &[Move], policy: Policy, skipped: &mut usize) -> Option<(Move, Complex, ComplexityVector)> {
    match policy {
        Policy::First => {
            for m in moves {
                match apply(c, m) {
                    Ok(a) => {
                        let v = complexity(&a.complex).ok()?;
                        return Some((m.clone(), a.complex, v));
                    }
                    Err(_) => *skipped += 1,
                }
            }
            None
        }
        Policy::Greedy => {
            let results: Vec<Option<(Move, Complex, ComplexityVector, String)>> = moves
                .par_iter()
                .map(|m| {
                    let a = apply(c, m).ok()?;
                    let v = complexity(&a.complex).ok()?;
                    let h = canonical_hash(&a.complex);
                    Some((m.clone(), a.complex, v, h))
                })
                .collect();
            *skipped += results.iter().filter(|r| r.is_none()).count();
            results
                .into_iter()
                .flatten()
                .min_by(|a, b| a.2.cmp(&b.2).then_with(|| a.3.cmp(&b.3)))
                .map(|(m, c, v, _)| (m, c, v))
        }
    }
}

/// Applies moves until none applies, preferring reducing moves over
/// thinning sequences. Fails with [`Error::CapReached`] if a move is still
/// available after `cap` steps.
pub fn thin(
    complex: &Complex,
    proposer: &dyn MoveProposer,
    policy: Policy,
    cap: usize,
) -> Result<(Complex, ThinningTrace)> {
    crate::moves::require_valid(complex)?;
    let mut cur = complex.clone();
    let mut trace = ThinningTrace { initial: complexity(&cur)?, steps: vec![], terminal: false, skipped: 0 };
    loop {
        let all = candidates(&cur, proposer);
        let (reducing, other): (Vec<Move>, Vec<Move>) = all.into_iter().partition(Move::is_reducing);
        let mut skipped = 0;
        let next = choose(&cur, &reducing, policy, &mut skipped).or_else(|| choose(&cur, &other, policy, &mut skipped));
        trace.skipped += skipped;
        let Some((m, after, vector)) = next else {
            trace.terminal = true;
            return Ok((cur, trace));
        };
        if trace.steps.len() >= cap {
            return Err(Error::CapReached(trace.steps.len()));
        }
        trace.steps.push(TraceStep { hash: canonical_hash(&after), applied: m, vector });
        cur = after;
    }
}

/// Whether `complex` is reduced with respect to `proposer`.
pub fn is_reduced_by(complex: &Complex, proposer: &dyn MoveProposer) -> (bool, Option<Move>) {
    is_reduced(complex, &proposer.propose(complex))
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphNode {
    #[serde(skip)]
    pub complex: Complex,
    pub vector: ComplexityVector,
    pub depth: usize,
    pub expanded: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    #[serde(rename = "move")]
    pub label: Move,
}

/// Complexes reachable by accepted moves, keyed by canonical hash.
#[derive(Debug, Clone, Serialize)]
pub struct RewriteGraph {
    pub root: String,
    pub nodes: BTreeMap<String, GraphNode>,
    pub edges: Vec<GraphEdge>,
    /// Some node was left unexpanded by the depth cap or node budget.
    pub incomplete: bool,
}

impl RewriteGraph {
    pub fn successors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.iter().filter(move |e| e.from == id).map(|e| e.to.as_str())
    }

    /// Expanded nodes without outgoing edges.
    pub fn sinks(&self) -> Vec<&str> {
        let with_out: BTreeSet<&str> = self.edges.iter().map(|e| e.from.as_str()).collect();
        self.nodes
            .iter()
            .filter(|(id, n)| n.expanded && !with_out.contains(id.as_str()))
            .map(|(id, _)| id.as_str())
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg: BTreeMap<&str, usize> = self.nodes.keys().map(|k| (k.as_str(), 0)).collect();
        for e in &self.edges {
            *indeg.get_mut(e.to.as_str()).unwrap() += 1;
        }
        let mut ready: Vec<&str> = indeg.iter().filter(|(_, d)| **d == 0).map(|(k, _)| *k).collect();
        let mut seen = 0;
        while let Some(n) = ready.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.from == n) {
                let d = indeg.get_mut(e.to.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(&e.to);
                }
            }
        }
        seen == self.nodes.len()
    }

    /// Every node reaches some sink, ignoring unexpanded nodes.
    pub fn every_node_reaches_a_sink(&self) -> bool {
        let sinks: BTreeSet<&str> = self.sinks().into_iter().collect();
        self.nodes.keys().all(|start| {
            let mut todo = vec![start.as_str()];
            let mut seen = BTreeSet::new();
            while let Some(n) = todo.pop() {
                if sinks.contains(n) || !self.nodes[n].expanded {
                    return true;
                }
                if seen.insert(n) {
                    todo.extend(self.successors(n));
                }
            }
            false
        })
    }
}

/// Breadth-first expansion of the rewrite order from `complex`.
pub fn rewrite_graph(
    complex: &Complex,
    proposer: &dyn MoveProposer,
    depth_cap: usize,
    node_budget: usize,
) -> Result<RewriteGraph> {
    crate::moves::require_valid(complex)?;
    let root = canonical_hash(complex);
    let mut g = RewriteGraph { root: root.clone(), nodes: BTreeMap::new(), edges: vec![], incomplete: false };
    g.nodes.insert(
        root.clone(),
        GraphNode { complex: complex.clone(), vector: complexity(complex)?, depth: 0, expanded: false },
    );
    let mut frontier: VecDeque<String> = VecDeque::from([root]);
    while !frontier.is_empty() {
        let level: Vec<String> = frontier.drain(..).collect();
        let expandable: Vec<String> = level.into_iter().filter(|id| g.nodes[id].depth < depth_cap).collect();
        let results: Vec<(String, Vec<(Move, Complex, ComplexityVector, String)>)> = expandable
            .par_iter()
            .map(|id| {
                let c = &g.nodes[id].complex;
                let out = candidates(c, proposer)
                    .into_iter()
                    .filter_map(|m| {
                        let a = apply(c, &m).ok()?;
                        let v = complexity(&a.complex).ok()?;
                        let h = canonical_hash(&a.complex);
                        Some((m, a.complex, v, h))
                    })
                    .collect();
                (id.clone(), out)
            })
            .collect();
        for (id, succ) in results {
            g.nodes.get_mut(&id).unwrap().expanded = true;
            let depth = g.nodes[&id].depth + 1;
            for (m, c, v, h) in succ {
                if !g.nodes.contains_key(&h) {
                    if g.nodes.len() >= node_budget {
                        g.incomplete = true;
                        continue;
                    }
                    g.nodes.insert(h.clone(), GraphNode { complex: c, vector: v, depth, expanded: false });
                    frontier.push_back(h.clone());
                }
                let dup = g.edges.iter().any(|e| e.from == id && e.to == h);
                if !dup {
                    g.edges.push(GraphEdge { from: id.clone(), to: h, label: m });
                }
            }
        }
    }
    if g.nodes.values().any(|n| !n.expanded) {
        g.incomplete = true;
    }
    Ok(g)
}
