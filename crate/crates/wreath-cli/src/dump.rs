//! Witness-graph dumps: a JSON edge list and a Graphviz rendering of the
//! same multigraph, one edge entry per multiplicity unit.

use core::fmt::Write as _;
use wreath_core::ggraph::GGraph;

/// Graph as `{"vertices": [...], "edges": [[start, label], ...]}` with
/// edges repeated per multiplicity and ordered by `(start, label)`.
pub fn graph_json(graph: &GGraph) -> serde_json::Value {
    let vertices: Vec<i64> = graph.vertices().iter().copied().collect();
    let mut edges = Vec::new();
    for (&(start, label), &mult) in graph.edges() {
        for _ in 0..mult {
            edges.push(serde_json::json!([start, label]));
        }
    }
    serde_json::json!({ "vertices": vertices, "edges": edges })
}

/// Graphviz digraph; each edge runs from its start vertex to
/// `start + b(label)` and is tagged with the generator index.
pub fn graph_dot(graph: &GGraph) -> String {
    let mut out = String::from("digraph witness {\n");
    for &v in graph.vertices() {
        let _ = writeln!(out, "    \"{v}\";");
    }
    for (&(start, label), &mult) in graph.edges() {
        let end = start + graph.gens().b(label);
        for _ in 0..mult {
            let _ = writeln!(out, "    \"{start}\" -> \"{end}\" [label=\"g{label}\"];");
        }
    }
    out.push_str("}\n");
    out
}
