//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the library's index, reachability, comparison or
//! hashing code; every quantity is recomputed from the raw record fields.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use widthcalc::{Complex, Surface};

/// Index from genus and puncture counts:
/// `6 (g+ - sum g- + |minus|) + 2 (p+ - sum p-)`.
pub fn mu_oracle(plus: Surface, minus: &[Surface]) -> i64 {
    let g: i64 = minus.iter().map(|s| s.genus).sum();
    let p: i64 = minus.iter().map(|s| s.punctures).sum();
    6 * (plus.genus - g + minus.len() as i64) + 2 * (plus.punctures - p)
}

fn port_surface(c: &Complex, id: &str) -> Surface {
    c.thin
        .iter()
        .find(|f| f.id == id)
        .map(|f| f.surface)
        .or_else(|| c.boundary.iter().find(|b| b.id == id).map(|b| b.surface))
        .unwrap_or_else(|| panic!("no port {id}"))
}

fn thick_surface(c: &Complex, id: &str) -> Surface {
    c.thick.iter().find(|t| t.id == id).map(|t| t.surface).unwrap_or_else(|| panic!("no thick level {id}"))
}

/// Index of the compressionbody with record id `cb`.
pub fn cb_mu(c: &Complex, cb: &str) -> i64 {
    let rec = c.cbs.iter().find(|x| x.id == cb).unwrap_or_else(|| panic!("no cb {cb}"));
    let minus: Vec<Surface> = rec.minus.iter().map(|p| port_surface(c, p)).collect();
    mu_oracle(thick_surface(c, &rec.plus), &minus)
}

pub fn mu_up(c: &Complex, thick: &str) -> i64 {
    let t = c.thick.iter().find(|t| t.id == thick).unwrap();
    cb_mu(c, &t.upper_cb)
}

pub fn mu_down(c: &Complex, thick: &str) -> i64 {
    let t = c.thick.iter().find(|t| t.id == thick).unwrap();
    cb_mu(c, &t.lower_cb)
}

/// Edges `H -> J` of the thick-level digraph, one per thin level.
pub fn edges(c: &Complex) -> Vec<(String, String)> {
    let owner = |cb: &str| c.cbs.iter().find(|x| x.id == cb).map(|x| x.plus.clone());
    c.thin.iter().filter_map(|f| Some((owner(&f.from_cb)?, owner(&f.to_cb)?))).collect()
}

/// Endpoints of every simple directed path starting at `start`, found by
/// enumerating the paths one at a time.
pub fn path_reach(edges: &[(String, String)], start: &str) -> BTreeSet<String> {
    let mut found = BTreeSet::new();
    let mut paths: Vec<Vec<String>> = vec![vec![start.to_owned()]];
    while let Some(path) = paths.pop() {
        let last = path.last().unwrap().clone();
        found.insert(last.clone());
        for (a, b) in edges {
            if *a == last && !path.contains(b) {
                let mut next = path.clone();
                next.push(b.clone());
                paths.push(next);
            }
        }
    }
    found
}

fn flipped(edges: &[(String, String)]) -> Vec<(String, String)> {
    edges.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

pub fn upper_index(c: &Complex, thick: &str) -> i64 {
    let reach = path_reach(&edges(c), thick);
    6 - 6 * reach.len() as i64 + reach.iter().map(|j| mu_up(c, j)).sum::<i64>()
}

pub fn lower_index(c: &Complex, thick: &str) -> i64 {
    let reach = path_reach(&flipped(&edges(c)), thick);
    6 - 6 * reach.len() as i64 + reach.iter().map(|j| mu_down(c, j)).sum::<i64>()
}

pub fn vector(c: &Complex) -> Vec<i64> {
    let mut v: Vec<i64> = c.thick.iter().map(|t| upper_index(c, &t.id) + lower_index(c, &t.id)).collect();
    v.sort();
    v.reverse();
    v
}

/// Pads the shorter vector with -1 and compares element by element.
pub fn naive_compare(a: &[i64], b: &[i64]) -> Ordering {
    let n = a.len().max(b.len());
    let pad = |v: &[i64]| {
        let mut v = v.to_vec();
        v.resize(n, -1);
        v
    };
    pad(a).cmp(&pad(b))
}

/// Cycle detection by repeatedly deleting sources.
pub fn has_cycle(nodes: &BTreeSet<String>, edges: &[(String, String)]) -> bool {
    let mut indeg: BTreeMap<&str, usize> = nodes.iter().map(|n| (n.as_str(), 0)).collect();
    for (_, b) in edges {
        *indeg.get_mut(b.as_str()).unwrap() += 1;
    }
    let mut ready: Vec<&str> = indeg.iter().filter(|(_, d)| **d == 0).map(|(n, _)| *n).collect();
    let mut removed = 0;
    while let Some(n) = ready.pop() {
        removed += 1;
        for (a, b) in edges {
            if a == n {
                let d = indeg.get_mut(b.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(b.as_str());
                }
            }
        }
    }
    removed < nodes.len()
}

/// Renames every id through a random injective map and shuffles every list.
pub fn relabel(c: &Complex, rng: &mut impl Rng) -> Complex {
    let mut ids: Vec<String> = c
        .thick
        .iter()
        .map(|t| t.id.clone())
        .chain(c.thin.iter().map(|t| t.id.clone()))
        .chain(c.boundary.iter().map(|t| t.id.clone()))
        .chain(c.cbs.iter().map(|t| t.id.clone()))
        .collect();
    ids.shuffle(rng);
    let salt: u32 = rng.gen();
    let map: BTreeMap<String, String> =
        ids.iter().enumerate().map(|(i, id)| (id.clone(), format!("n{salt:x}_{i}"))).collect();
    let m = |s: &String| map[s].clone();
    let mut d = c.clone();
    for t in &mut d.thick {
        t.id = m(&t.id);
        t.upper_cb = m(&t.upper_cb);
        t.lower_cb = m(&t.lower_cb);
    }
    for f in &mut d.thin {
        f.id = m(&f.id);
        f.from_cb = m(&f.from_cb);
        f.to_cb = m(&f.to_cb);
    }
    for b in &mut d.boundary {
        b.id = m(&b.id);
        b.owner = m(&b.owner);
    }
    for cb in &mut d.cbs {
        cb.id = m(&cb.id);
        cb.plus = m(&cb.plus);
        cb.minus = cb.minus.iter().map(m).collect();
        cb.minus.shuffle(rng);
    }
    d.thick.shuffle(rng);
    d.thin.shuffle(rng);
    d.boundary.shuffle(rng);
    d.cbs.shuffle(rng);
    d
}
