//! Graphviz export.

use std::fmt::Write;

use crate::graph::WeightedDualGraph;
use crate::potential::locus::SubgraphLocus;
use crate::scalar::Scalar;

const HIGHLIGHT: &str = "color=red, penwidth=2";
const PARTIAL: &str = "color=orange, penwidth=2, style=dashed";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Deterministic DOT text: vertices labelled `id (N,g)`, edges labelled with
/// their `p/q` length, rays as dotted edges to point nodes. Members of
/// `locus` are highlighted; edges it covers only in part are dashed.
pub fn to_dot<S: Scalar>(graph: &WeightedDualGraph<S>, locus: Option<&SubgraphLocus<S>>) -> String {
    let mut out = String::new();
    let name = graph.name().unwrap_or("G");
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    for (i, label) in graph.vertices().iter().enumerate() {
        let text = format!("{} ({},{})", label.id, label.multiplicity, label.genus);
        let extra = match locus {
            Some(l) if l.vertices().contains(&i) => format!(", {HIGHLIGHT}"),
            _ => String::new(),
        };
        writeln!(
            out,
            "  {} [label={}{extra}];",
            quote(&label.id),
            quote(&text)
        )
        .unwrap();
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        let extra = match locus {
            Some(l) if l.edges().contains(&e) => format!(", {HIGHLIGHT}"),
            Some(l) if l.segments().contains_key(&e) => format!(", {PARTIAL}"),
            _ => String::new(),
        };
        writeln!(
            out,
            "  {} -- {} [label={}{extra}];",
            quote(&graph.vertex(edge.a).id),
            quote(&graph.vertex(edge.b).id),
            quote(&edge.length.to_canonical())
        )
        .unwrap();
    }
    for ray in graph.rays() {
        let end = quote(&format!("ray:{}", ray.label));
        writeln!(out, "  {end} [shape=point, label=\"\"];").unwrap();
        writeln!(
            out,
            "  {} -- {end} [style=dotted, label={}];",
            quote(&graph.vertex(ray.attach).id),
            quote(&ray.label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
