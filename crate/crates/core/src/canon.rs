//! Relabeling-invariant digest of a complex.
//!
//! Levels and compressionbodies become vertices coloured by their numeric
//! data; colour refinement over the incidence structure runs until the
//! partition is stable, and the sorted final colours are hashed.

use std::collections::{BTreeMap, HashMap};

use sha2::{Digest, Sha256};

use crate::model::Complex;

fn h(parts: &[&str]) -> String {
    let mut d = Sha256::new();
    for p in parts {
        d.update(p.as_bytes());
        d.update([0]);
    }
    d.finalize().iter().take(12).map(|b| format!("{b:02x}")).collect()
}

/// Hex digest, equal for complexes that differ only by their ids.
pub fn canonical_hash(c: &Complex) -> String {
    let mut colour: BTreeMap<&str, String> = BTreeMap::new();
    let mut adj: HashMap<&str, Vec<(&'static str, &str)>> = HashMap::new();
    for t in &c.thick {
        colour.insert(&t.id, format!("T{},{}", t.surface.genus, t.surface.punctures));
    }
    for f in &c.thin {
        colour.insert(&f.id, format!("F{},{}", f.surface.genus, f.surface.punctures));
    }
    for b in &c.boundary {
        colour.insert(&b.id, format!("B{},{},{}", b.surface.genus, b.surface.punctures, b.is_drilled_vertex));
    }
    for cb in &c.cbs {
        let side = c.side_of(cb).map(|s| format!("{s:?}")).unwrap_or_default();
        colour.insert(
            &cb.id,
            format!("C{side}{}{}{}", cb.tangle, cb.product_certificate, cb.ball_certificate),
        );
    }

    let mut edge = |label: &'static str, back: &'static str, a: &str, b: &str| {
        let (Some((ka, _)), Some((kb, _))) = (colour.get_key_value(a), colour.get_key_value(b)) else { return };
        adj.entry(*ka).or_default().push((label, *kb));
        adj.entry(*kb).or_default().push((back, *ka));
    };
    for cb in &c.cbs {
        edge("plus", "plus-of", &cb.id, &cb.plus);
        for p in &cb.minus {
            edge("minus", "minus-of", &cb.id, p);
        }
    }
    for f in &c.thin {
        edge("from", "from-of", &f.id, &f.from_cb);
        edge("to", "to-of", &f.id, &f.to_cb);
    }
    for b in &c.boundary {
        edge("owner", "owner-of", &b.id, &b.owner);
    }
    for t in &c.thick {
        edge("upper", "upper-of", &t.id, &t.upper_cb);
        edge("lower", "lower-of", &t.id, &t.lower_cb);
    }

    let classes = |col: &BTreeMap<&str, String>| {
        let mut v: Vec<&String> = col.values().collect();
        v.sort();
        v.dedup();
        v.len()
    };
    let mut current = classes(&colour);
    for _ in 0..colour.len() {
        let next: BTreeMap<&str, String> = colour
            .iter()
            .map(|(id, col)| {
                let mut around: Vec<String> = adj
                    .get(id)
                    .map(|n| n.iter().map(|(l, m)| format!("{l}:{}", colour[m])).collect())
                    .unwrap_or_default();
                around.sort();
                let mut parts = vec![col.as_str()];
                parts.extend(around.iter().map(String::as_str));
                (*id, h(&parts))
            })
            .collect();
        colour = next;
        let n = classes(&colour);
        if n == current {
            break;
        }
        current = n;
    }

    let mut all: Vec<&String> = colour.values().collect();
    all.sort();
    let mut d = Sha256::new();
    d.update(if c.reducible { b"R" } else { b"I" });
    for col in all {
        d.update(col.as_bytes());
        d.update([b'\n']);
    }
    d.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
