//! Graphviz output for neighbor graphs.

use std::fmt::Write;

use crystile_core::NeighborGraph;

/// States in element order, then edges in edge order; edge labels are `δ|δ′`.
pub fn graph_to_dot(graph: &NeighborGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    for s in &graph.states {
        writeln!(out, "  \"{s}\";").unwrap();
    }
    for e in &graph.edges {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}|{}\"];", e.src, e.dst, e.delta, e.deltap).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crystile_core::neighbors::neighbor_graph;
    use crystile_core::TileParams;

    #[test]
    fn empty_graph() {
        assert_eq!(graph_to_dot(&NeighborGraph::default(), "G"), "digraph \"G\" {\n}\n");
    }

    #[test]
    fn one_line_per_edge() {
        let g = neighbor_graph(&TileParams::new(1, 2).unwrap());
        let dot = graph_to_dot(&g, "G");
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        assert_eq!(edges, g.edges.len());
        assert_eq!(dot.lines().count(), 2 + g.states.len() + g.edges.len());
        assert!(dot.contains("\"c\" -> "));
    }
}
