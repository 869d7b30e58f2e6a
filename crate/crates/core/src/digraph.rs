//! Flow-line digraph on thick levels.
//!
//! One edge `H -> J` per thin level whose orientation points out of the
//! upper compressionbody of `H` and into the lower compressionbody of `J`,
//! so `J` is above `H`.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::Complex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: String,
    pub to: String,
    pub thin: String,
}

#[derive(Debug, Clone, Default)]
pub struct ThickDigraph {
    pub nodes: Vec<String>,
    pub edges: Vec<FlowEdge>,
    out: BTreeMap<String, Vec<String>>,
    inc: BTreeMap<String, Vec<String>>,
}

impl ThickDigraph {
    /// Builds the digraph, skipping thin levels whose references do not resolve.
    pub fn new(complex: &Complex) -> Self {
        let mut nodes: Vec<String> = complex.thick.iter().map(|t| t.id.clone()).collect();
        nodes.sort();
        let mut g = ThickDigraph { nodes, ..Default::default() };
        for n in &g.nodes {
            g.out.insert(n.clone(), Vec::new());
            g.inc.insert(n.clone(), Vec::new());
        }
        for f in &complex.thin {
            let (Ok(a), Ok(b)) = (complex.cb(&f.from_cb), complex.cb(&f.to_cb)) else { continue };
            if !g.out.contains_key(&a.plus) || !g.out.contains_key(&b.plus) {
                continue;
            }
            g.out.get_mut(&a.plus).unwrap().push(b.plus.clone());
            g.inc.get_mut(&b.plus).unwrap().push(a.plus.clone());
            g.edges.push(FlowEdge { from: a.plus.clone(), to: b.plus.clone(), thin: f.id.clone() });
        }
        g
    }

    pub fn successors(&self, id: &str) -> &[String] {
        self.out.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn predecessors(&self, id: &str) -> &[String] {
        self.inc.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.out.contains_key(id)
    }

    /// A directed cycle, if there is one.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let mut mark: BTreeMap<&str, Mark> = self.nodes.iter().map(|n| (n.as_str(), Mark::White)).collect();
        for root in &self.nodes {
            if mark[root.as_str()] != Mark::White {
                continue;
            }
            // Iterative DFS keeping the grey path explicit.
            let mut stack: Vec<(&str, usize)> = vec![(root.as_str(), 0)];
            mark.insert(root, Mark::Grey);
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                let succ = self.successors(node);
                if *next < succ.len() {
                    let s = succ[*next].as_str();
                    *next += 1;
                    match mark[s] {
                        Mark::Grey => {
                            let start = stack.iter().position(|(n, _)| *n == s).unwrap();
                            let mut cycle: Vec<String> = stack[start..].iter().map(|(n, _)| n.to_string()).collect();
                            cycle.push(s.to_owned());
                            return Some(cycle);
                        }
                        Mark::White => {
                            mark.insert(s, Mark::Grey);
                            stack.push((s, 0));
                        }
                        Mark::Black => {}
                    }
                } else {
                    mark.insert(node, Mark::Black);
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    fn reach(&self, start: &str, forward: bool) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut todo = vec![start.to_owned()];
        while let Some(n) = todo.pop() {
            if !seen.insert(n.clone()) {
                continue;
            }
            let next = if forward { self.successors(&n) } else { self.predecessors(&n) };
            todo.extend(next.iter().filter(|m| !seen.contains(*m)).cloned());
        }
        seen
    }

    /// `start` together with every thick level above it.
    pub fn reach_up(&self, start: &str) -> BTreeSet<String> {
        self.reach(start, true)
    }

    /// `start` together with every thick level below it.
    pub fn reach_down(&self, start: &str) -> BTreeSet<String> {
        self.reach(start, false)
    }

    /// Kahn order; `None` when cyclic.
    pub fn topological_order(&self) -> Option<Vec<String>> {
        let mut indeg: BTreeMap<&str, usize> = self.nodes.iter().map(|n| (n.as_str(), 0)).collect();
        for e in &self.edges {
            *indeg.get_mut(e.to.as_str()).unwrap() += 1;
        }
        let mut ready: BTreeSet<&str> = indeg.iter().filter(|(_, d)| **d == 0).map(|(n, _)| *n).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(n) = ready.pop_first() {
            order.push(n.to_owned());
            for s in self.successors(n) {
                let d = indeg.get_mut(s.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(s.as_str());
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }
}

/// The flow-line digraph of a complex.
pub fn thick_digraph(complex: &Complex) -> ThickDigraph {
    ThickDigraph::new(complex)
}
