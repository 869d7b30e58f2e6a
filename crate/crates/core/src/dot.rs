//! Graphviz output.

use std::fmt::Write;

use crate::complexity::level_indices;
use crate::error::Result;
use crate::model::{mu, Complex};
use crate::search::RewriteGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Thick levels as boxes labelled with I↑/I↓, compressionbodies as
/// ellipses labelled with μ, thin and boundary levels as plain nodes.
pub fn complex_dot(c: &Complex) -> Result<String> {
    let idx = level_indices(c)?;
    let mut s = String::from("digraph complex {\n  rankdir=BT;\n");
    for t in &c.thick {
        let li = idx.iter().find(|l| l.id == t.id).expect("every thick level has indices");
        let _ = writeln!(
            s,
            "  {} [shape=box, label=\"{} {}\\nI\u{2191}={} I\u{2193}={}\"];",
            quote(&t.id),
            t.id,
            t.surface,
            li.index_up,
            li.index_down
        );
    }
    for cb in &c.cbs {
        let _ = writeln!(s, "  {} [shape=ellipse, label=\"{}\\n\u{3bc}={}\"];", quote(&cb.id), cb.id, mu(cb, c)?);
    }
    for f in &c.thin {
        let _ = writeln!(s, "  {} [shape=plaintext, label=\"{} {}\"];", quote(&f.id), f.id, f.surface);
        let _ = writeln!(s, "  {} -> {};", quote(&f.from_cb), quote(&f.id));
        let _ = writeln!(s, "  {} -> {};", quote(&f.id), quote(&f.to_cb));
    }
    for b in &c.boundary {
        let _ = writeln!(s, "  {} [shape=diamond, label=\"{} {}\"];", quote(&b.id), b.id, b.surface);
        let _ = writeln!(s, "  {} -> {} [style=dashed];", quote(&b.owner), quote(&b.id));
    }
    for t in &c.thick {
        let _ = writeln!(s, "  {} -> {} [arrowhead=none];", quote(&t.id), quote(&t.upper_cb));
        let _ = writeln!(s, "  {} -> {} [arrowhead=none];", quote(&t.lower_cb), quote(&t.id));
    }
    s.push_str("}\n");
    Ok(s)
}

/// Nodes are labelled by their complexity vectors, edges by move kind.
pub fn graph_dot(g: &RewriteGraph) -> String {
    let mut s = String::from("digraph rewrites {\n");
    let sinks = g.sinks();
    for (id, n) in &g.nodes {
        let short = &id[..id.len().min(8)];
        let shape = if sinks.contains(&id.as_str()) { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  {} [shape={shape}, label=\"{}\\n{short}\"];", quote(id), n.vector);
    }
    for e in &g.edges {
        let _ = writeln!(s, "  {} -> {} [label={}];", quote(&e.from), quote(&e.to), quote(e.label.kind()));
    }
    s.push_str("}\n");
    s
}
