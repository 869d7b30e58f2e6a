//! Structural validation of a [`Complex`].
//!
//! Validation never aborts: every malformed reference or violated invariant
//! is collected into a [`ValidationReport`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::digraph::ThickDigraph;
use crate::model::{Complex, Profile, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Offending id, or empty for complex-wide violations.
    pub id: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.message.contains(needle))
    }

    fn push(&mut self, id: &str, message: impl Into<String>) {
        self.violations.push(Violation { id: id.to_owned(), message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            if v.id.is_empty() {
                writeln!(f, "  {}", v.message)?;
            } else {
                writeln!(f, "  [{}] {}", v.id, v.message)?;
            }
        }
        Ok(())
    }
}

fn check_surface(report: &mut ValidationReport, id: &str, s: Surface) {
    if s.genus < 0 || s.punctures < 0 {
        report.push(id, format!("negative surface data (genus {}, punctures {})", s.genus, s.punctures));
    }
}

pub fn validate(complex: &Complex) -> ValidationReport {
    let mut report = ValidationReport::default();

    if complex.thick.is_empty() {
        report.push("", "no thick level");
    }

    let mut seen = HashSet::new();
    for id in complex.ids() {
        if !seen.insert(id) {
            report.push(id, "duplicate id");
        }
    }

    // Which compressionbodies list each port.
    let mut listed_by: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for cb in &complex.cbs {
        let mut local = HashSet::new();
        for p in &cb.minus {
            if !local.insert(p.as_str()) {
                report.push(&cb.id, format!("port `{p}` listed twice"));
            }
            listed_by.entry(p.as_str()).or_default().push(cb.id.as_str());
        }
    }

    for t in &complex.thick {
        check_surface(&mut report, &t.id, t.surface);
        if t.upper_cb == t.lower_cb {
            report.push(&t.id, "upper and lower compressionbody coincide");
        }
        for cb_id in [&t.upper_cb, &t.lower_cb] {
            match complex.cb(cb_id) {
                Ok(cb) if cb.plus != t.id => {
                    report.push(&t.id, format!("compressionbody `{cb_id}` has positive boundary `{}`", cb.plus))
                }
                Ok(_) => {}
                Err(_) => report.push(&t.id, format!("unresolved compressionbody `{cb_id}`")),
            }
        }
    }

    for f in &complex.thin {
        check_surface(&mut report, &f.id, f.surface);
        if f.surface.genus == 0 && f.surface.punctures == 1 {
            report.push(&f.id, "thin sphere meeting the graph once");
        }
        if f.from_cb == f.to_cb {
            report.push(&f.id, "thin level adjacent to a single compressionbody");
        }
        match complex.cb(&f.from_cb).and_then(|cb| complex.side_of(cb)) {
            Ok(crate::model::Side::Upper) => {}
            Ok(_) => report.push(&f.id, format!("orientation: `{}` is not an upper compressionbody", f.from_cb)),
            Err(_) => report.push(&f.id, format!("unresolved compressionbody `{}`", f.from_cb)),
        }
        match complex.cb(&f.to_cb).and_then(|cb| complex.side_of(cb)) {
            Ok(crate::model::Side::Lower) => {}
            Ok(_) => report.push(&f.id, format!("orientation: `{}` is not a lower compressionbody", f.to_cb)),
            Err(_) => report.push(&f.id, format!("unresolved compressionbody `{}`", f.to_cb)),
        }
        let mut listed = listed_by.get(f.id.as_str()).cloned().unwrap_or_default();
        listed.sort_unstable();
        let mut expected = vec![f.from_cb.as_str(), f.to_cb.as_str()];
        expected.sort_unstable();
        if listed != expected {
            report.push(&f.id, format!("listed as a port of {listed:?}, expected {expected:?}"));
        }
    }

    for b in &complex.boundary {
        check_surface(&mut report, &b.id, b.surface);
        if !complex.reducible && b.surface.genus == 0 && b.surface.punctures <= 2 {
            report.push(&b.id, "boundary sphere meeting the graph two or fewer times");
        }
        if b.is_drilled_vertex && (b.surface.genus != 0 || b.surface.punctures < 3) {
            report.push(&b.id, "drilled vertex must be a sphere with at least 3 punctures");
        }
        if complex.cb(&b.owner).is_err() {
            report.push(&b.id, format!("unresolved owner `{}`", b.owner));
        }
        let listed = listed_by.get(b.id.as_str()).cloned().unwrap_or_default();
        if listed != [b.owner.as_str()] {
            report.push(&b.id, format!("listed as a port of {listed:?}, expected [{:?}]", b.owner));
        }
    }

    for cb in &complex.cbs {
        match complex.thick_level(&cb.plus) {
            Ok(t) if t.upper_cb != cb.id && t.lower_cb != cb.id => {
                report.push(&cb.id, format!("thick level `{}` does not reference it", cb.plus))
            }
            Ok(_) => {}
            Err(_) => report.push(&cb.id, format!("unresolved thick level `{}`", cb.plus)),
        }
        for p in &cb.minus {
            if complex.port(p).is_err() {
                report.push(&cb.id, format!("unresolved port `{p}`"));
            }
        }
        let Ok(profile) = complex.profile(cb) else { continue };
        for m in profile.violations() {
            report.push(&cb.id, m);
        }
        check_certificates(&mut report, &cb.id, &profile, cb.product_certificate, cb.ball_certificate);
    }

    let refs_ok = report.violations.iter().all(|v| !v.message.contains("unresolved"));
    if refs_ok && !complex.thick.is_empty() {
        let g = ThickDigraph::new(complex);
        if let Some(cycle) = g.find_cycle() {
            report.push("", format!("closed flow line through {}", cycle.join(" -> ")));
        }
    }

    report
}

fn check_certificates(report: &mut ValidationReport, id: &str, p: &Profile, product: bool, ball: bool) {
    if product && ball {
        report.push(id, "product and ball certificates are exclusive");
    }
    if product && !p.is_product_shaped() {
        report.push(id, "product certificate on non-product boundary data");
    }
    if ball && !p.is_ball_shaped() {
        report.push(id, "ball certificate on non-ball boundary data");
    }
}
