//! A reduced run of the acceptance suite, for `widthcalc selftest`.
//!
//! Each criterion runs on `samples` random instances instead of the full
//! counts used by the test suite.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_hash;
use crate::complexity::{compare, complexity, index_down, index_up, reach_up, ComplexityVector};
use crate::error::Error;
use crate::fixtures;
use crate::gen::{gen_complex, gen_move, GenConfig};
use crate::model::{Complex, Profile, Surface, TangleSummary};
use crate::moves::{apply, boundary_reduce_profile, is_reduced, Check, Move};
use crate::search::{candidate_discs, thin, ExhaustiveProposer, MoveProposer, Policy, DEFAULT_CAP};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn outcome(name: &'static str, failures: Vec<String>, ok_detail: String) -> Outcome {
    match failures.first() {
        None => Outcome { name, passed: true, detail: ok_detail },
        Some(first) => Outcome { name, passed: false, detail: format!("{} failures, first: {first}", failures.len()) },
    }
}

/// A random valid profile with genus and punctures in the given bounds.
pub fn random_profile(rng: &mut impl Rng, max_genus: i64, max_punctures: i64) -> Profile {
    loop {
        let plus = Surface::new(rng.gen_range(0..=max_genus), rng.gen_range(0..=max_punctures));
        let k = rng.gen_range(0..=2);
        let minus: Vec<Surface> = (0..k)
            .map(|_| Surface::new(rng.gen_range(0..=plus.genus), rng.gen_range(0..=max_punctures)))
            .collect();
        let p = Profile::new(plus, minus, TangleSummary::EMPTY);
        let pm = p.minus_punctures();
        let cap = p.ghost_capacity().max(0);
        let lo = (pm - 2 * cap).max(0);
        let vs: Vec<i64> = (lo..=plus.punctures.min(pm))
            .filter(|v| (plus.punctures - v) % 2 == 0 && (pm - v) % 2 == 0)
            .collect();
        let Some(&v) = vs.choose(rng) else { continue };
        let t = TangleSummary::new(v, (plus.punctures - v) / 2, (pm - v) / 2, i64::from(rng.gen_bool(0.1)));
        let p = Profile { tangle: t, ..p };
        if p.is_valid() {
            return p;
        }
    }
}

fn trivial_table() -> Outcome {
    let mut failures = Vec::new();
    let ball = Profile::new(Surface::sphere(0), vec![], TangleSummary::EMPTY).index();
    let arc = Profile::new(Surface::sphere(2), vec![], TangleSummary::ARC).index();
    if ball != 0 {
        failures.push(format!("mu(ball) = {ball}"));
    }
    if arc != 4 {
        failures.push(format!("mu(ball, arc) = {arc}"));
    }
    for g in 0..=3 {
        for p in 0..=6 {
            let s = Surface::new(g, p);
            let mu = Profile::new(s, vec![s], TangleSummary::verticals(p)).index();
            if mu != 6 {
                failures.push(format!("product over {s}: {mu}"));
            }
        }
    }
    outcome("trivial-index table", failures, "0, 4, 6".into())
}

fn boundary_identity(rng: &mut impl Rng, samples: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut seen = BTreeSet::new();
    for _ in 0..samples {
        let p = random_profile(rng, 3, 6);
        let ports: Vec<(String, Surface)> = p.minus.iter().enumerate().map(|(i, s)| (i.to_string(), *s)).collect();
        let discs = candidate_discs(p.plus, &ports, p.tangle);
        let Some(d) = discs.choose(rng) else { continue };
        match boundary_reduce_profile(&p, d) {
            Ok(r) => {
                seen.insert((d.q, d.delta()));
                let sum: i64 = r.pieces.iter().map(|x| x.profile.index()).sum();
                if sum != r.mu - 6 + 4 * d.q + 6 * d.delta() {
                    failures.push(format!("{p:?} {d:?}"));
                }
            }
            Err(Error::Rejected { check: Check::BoundaryReduction, detail }) if detail.contains("!=") => {
                failures.push(detail);
            }
            Err(_) => {}
        }
    }
    outcome("boundary-reduction identity", failures, format!("(q, delta) cases seen: {}", seen.len()))
}

fn moves_decrease(rng: &mut impl Rng, samples: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut kinds = BTreeSet::new();
    for _ in 0..samples {
        let c = gen_complex(&GenConfig::default(), rng);
        let Some(m) = gen_move(&c, rng) else { continue };
        let (Ok(before), Ok(a)) = (complexity(&c), apply(&c, &m)) else { continue };
        kinds.insert(m.kind());
        match complexity(&a.complex) {
            Ok(after) if compare(&after, &before) == Ordering::Less => {}
            other => failures.push(format!("{m}: {other:?} vs {before}")),
        }
    }
    outcome("monotone decrease", failures, format!("move kinds seen: {kinds:?}"))
}

fn nonnegative(rng: &mut impl Rng, samples: usize) -> Outcome {
    let mut failures = Vec::new();
    for _ in 0..samples {
        let c = gen_complex(&GenConfig::wide(), rng);
        for t in &c.thick {
            let (u, d) = (index_up(&c, &t.id), index_down(&c, &t.id));
            if !matches!((&u, &d), (Ok(u), Ok(d)) if *u >= 0 && *d >= 0) {
                failures.push(format!("{}: {u:?} {d:?}", t.id));
            }
        }
    }
    outcome("index non-negativity", failures, format!("{samples} complexes"))
}

fn termination(rng: &mut impl Rng, samples: usize) -> Outcome {
    let mut failures = Vec::new();
    let proposer = ExhaustiveProposer::default();
    let cfg = GenConfig { max_thick: 3, ..GenConfig::default() };
    for _ in 0..samples {
        let c = gen_complex(&cfg, rng);
        match thin(&c, &proposer, Policy::First, DEFAULT_CAP) {
            Ok((end, trace)) => {
                if !trace.is_strictly_decreasing() {
                    failures.push("trace not decreasing".into());
                }
                if let (false, Some(m)) = is_reduced(&end, &proposer.propose(&end)) {
                    failures.push(format!("terminal complex admits {m}"));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    outcome("termination", failures, format!("{samples} runs"))
}

fn scenario() -> Outcome {
    let c = fixtures::spherical_untelescoping();
    let before = complexity(&c).ok();
    let after = apply(&c, &Move::ThinningSequence(fixtures::spherical_thinning_move()))
        .ok()
        .and_then(|a| complexity(&a.complex).ok());
    let expected = (Some(ComplexityVector::new(vec![24])), Some(ComplexityVector::new(vec![18, 18])));
    let mut failures = Vec::new();
    if (before.clone(), after.clone()) != expected {
        failures.push(format!("{before:?} -> {after:?}"));
    }
    outcome("spherical untelescoping", failures, "(24) -> (18,18)".into())
}

fn oracles(rng: &mut impl Rng, samples: usize) -> Outcome {
    let mut failures = Vec::new();
    for _ in 0..samples {
        let c = gen_complex(&GenConfig::default(), rng);
        for t in &c.thick {
            let mut seen = BTreeSet::new();
            let mut stack = vec![t.id.clone()];
            while let Some(x) = stack.pop() {
                for f in &c.thin {
                    let from = c.cbs.iter().find(|cb| cb.id == f.from_cb).map(|cb| cb.plus.clone());
                    let to = c.cbs.iter().find(|cb| cb.id == f.to_cb).map(|cb| cb.plus.clone());
                    if from.as_deref() == Some(x.as_str()) {
                        if let Some(to) = to {
                            if seen.insert(to.clone()) {
                                stack.push(to);
                            }
                        }
                    }
                }
            }
            seen.insert(t.id.clone());
            if reach_up(&c, &t.id).ok() != Some(seen) {
                failures.push(format!("reach_up({})", t.id));
            }
        }
        let text = c.to_json().replace("\"H", "\"level-");
        match Complex::from_json(&text) {
            Ok(d) if canonical_hash(&d) == canonical_hash(&c) => {}
            _ => failures.push("hash changed under relabeling".into()),
        }
    }
    outcome("oracle equivalences", failures, format!("{samples} complexes"))
}

fn duality(rng: &mut impl Rng, samples: usize) -> Outcome {
    let mut failures = Vec::new();
    for _ in 0..samples {
        let c = gen_complex(&GenConfig::default(), rng);
        let r = c.reversed();
        for t in &c.thick {
            if index_up(&c, &t.id).ok() != index_down(&r, &t.id).ok()
                || index_down(&c, &t.id).ok() != index_up(&r, &t.id).ok()
            {
                failures.push(format!("indices at {}", t.id));
            }
        }
        if complexity(&c).ok() != complexity(&r).ok() {
            failures.push("vector changed".into());
        }
    }
    outcome("orientation reversal", failures, format!("{samples} complexes"))
}

fn timed(f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    o.detail = format!("{} [{:.2?}]", o.detail, start.elapsed());
    o
}

/// Runs every criterion with `samples` random instances each.
pub fn run(seed: u64, samples: usize) -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        timed(trivial_table),
        timed(|| boundary_identity(&mut rng, samples * 10)),
        timed(|| nonnegative(&mut rng, samples)),
        timed(|| moves_decrease(&mut rng, samples)),
        timed(|| termination(&mut rng, samples.div_ceil(10))),
        timed(scenario),
        timed(|| oracles(&mut rng, samples)),
        timed(|| duality(&mut rng, samples)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        for o in run(3, 10) {
            assert!(o.passed, "{o}");
        }
    }
}
