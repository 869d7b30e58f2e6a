//! Expands every rewrite of the diamond instance and prints the graph as DOT.

use widthcalc::dot::graph_dot;
use widthcalc::fixtures;
use widthcalc::search::{rewrite_graph, ExhaustiveProposer};

fn main() -> widthcalc::Result<()> {
    let g = rewrite_graph(&fixtures::diamond(), &ExhaustiveProposer::default(), 8, 200)?;
    eprintln!("{} nodes, {} edges, {} sinks, acyclic: {}", g.nodes.len(), g.edges.len(), g.sinks().len(), g.is_acyclic());
    print!("{}", graph_dot(&g));
    Ok(())
}
