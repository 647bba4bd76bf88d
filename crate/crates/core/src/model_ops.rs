//! Graph-level effect of blowing up a model and of tame base change.
//!
//! Vertices are only ever appended, so vertex indices of the input stay valid
//! in the output. An operation that splits an edge keeps the first piece at
//! the old edge index and appends the remaining pieces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{vertex_distances, MetricKind, WeightedDualGraph};
use crate::scalar::Scalar;

/// One blow-up instruction. Serialized as `{"op": "node", "target": 3}` or
/// `{"op": "interior", "target": "v4"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "target", rename_all = "lowercase")]
pub enum BlowUp {
    /// Blow up the node corresponding to a compact edge (by index).
    Node(usize),
    /// Blow up a smooth point of the component with the given vertex id.
    Interior(String),
}

fn require_model_edge<S: Scalar>(graph: &WeightedDualGraph<S>, e: usize) -> Result<()> {
    let edge = graph.edge(e)?;
    if edge.is_loop() {
        return Err(Error::LoopPresent(e));
    }
    if graph.metric() != MetricKind::Model
        || edge.length != graph.formula_length(e, MetricKind::Model)?
    {
        return Err(Error::NotModelEdge(e));
    }
    Ok(())
}

/// Blows up the node of edge `e`, inserting a genus-0 vertex of multiplicity
/// `N1 + N2`. The new edges have model lengths `1/(N1 (N1+N2))` and
/// `1/((N1+N2) N2)`, which add up to the old `1/(N1 N2)`.
pub fn blow_up_node<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    e: usize,
) -> Result<WeightedDualGraph<S>> {
    require_model_edge(graph, e)?;
    let edge = graph.edge(e)?.clone();
    let n = graph.vertex(edge.a).multiplicity + graph.vertex(edge.b).multiplicity;
    let mut b = graph.to_builder();
    let mid = b.vertex(b.fresh_id("x"), n, 0)?;
    b.set_edge(e, edge.a, mid, None)?;
    b.edge(mid, edge.b)?;
    b.build()
}

/// Blows up a smooth point of the component `v` (not on any other component
/// or marked point): a new genus-0 leaf of multiplicity `N(v)` at model
/// distance `1/N(v)^2`.
pub fn blow_up_interior_point<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    v: usize,
) -> Result<WeightedDualGraph<S>> {
    if v >= graph.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let n = graph.vertex(v).multiplicity;
    let mut b = graph.to_builder();
    let leaf = b.vertex(b.fresh_id("x"), n, 0)?;
    b.edge(v, leaf)?;
    b.build()
}

/// Blows up the specialization of the marked point of ray `r`: a new genus-0
/// vertex of multiplicity `N` is inserted between the attachment vertex and
/// the ray, at model distance `1/N^2`.
pub fn blow_up_ray_point<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    r: usize,
) -> Result<WeightedDualGraph<S>> {
    if r >= graph.rays().len() {
        return Err(Error::UnknownRay(format!("#{r}")));
    }
    let v = graph.ray(r).attach;
    let n = graph.vertex(v).multiplicity;
    let mut b = graph.to_builder();
    let w = b.vertex(b.fresh_id("x"), n, 0)?;
    b.edge(v, w)?;
    b.set_ray_attach(r, w);
    b.build()
}

/// Graph of the minimal resolution after a tame extension of degree `n` of a
/// reduced model: every compact edge becomes a path of `n` edges of length
/// `length / n` through new genus-0 multiplicity-1 vertices. Lengths stay in
/// the normalization of the original base.
pub fn base_change_subdivide<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    n: u64,
    residue_characteristic: Option<u64>,
) -> Result<WeightedDualGraph<S>> {
    graph.require_reduced()?;
    if n == 0 {
        return Err(Error::Precondition(
            "extension degree must be positive".into(),
        ));
    }
    if let Some(p) = residue_characteristic.filter(|&p| p > 0) {
        if n.is_multiple_of(p) {
            return Err(Error::Precondition(format!(
                "extension degree {n} is divisible by the residue characteristic {p}"
            )));
        }
    }
    if n == 1 {
        return Ok(graph.clone());
    }
    let mut b = graph.to_builder();
    let step = |len: &S| len.clone() / S::from_uint(n);
    for (i, edge) in graph.edges().iter().enumerate() {
        let piece = step(&edge.length);
        let mut prev = edge.a;
        for k in 1..n {
            let id = b.fresh_id("s");
            let w = b.vertex(id, 1, 0)?;
            if k == 1 {
                b.set_edge(i, prev, w, Some(piece.clone()))?;
            } else {
                b.edge_with_length(prev, w, piece.clone())?;
            }
            prev = w;
        }
        b.edge_with_length(prev, edge.b, piece)?;
    }
    b.build()
}

/// Applies one instruction.
pub fn apply_blow_up<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    op: &BlowUp,
) -> Result<WeightedDualGraph<S>> {
    match op {
        BlowUp::Node(e) => blow_up_node(graph, *e),
        BlowUp::Interior(id) => blow_up_interior_point(graph, graph.vertex_index(id)?),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricInvarianceReport {
    pub preserved: bool,
    pub steps: usize,
    pub pairs_checked: usize,
    /// `(u, v, before, after)` for every pair whose distance changed.
    pub mismatches: Vec<(String, String, String, String)>,
}

/// Applies `sequence` and compares all pairwise distances among the vertices
/// of the input graph before and after.
pub fn verify_metric_invariance<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    sequence: &[BlowUp],
) -> Result<MetricInvarianceReport> {
    let mut current = graph.clone();
    for op in sequence {
        current = apply_blow_up(&current, op)?;
    }
    let n = graph.num_vertices();
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for u in 0..n {
        let before = vertex_distances(graph, u);
        let after = vertex_distances(&current, u);
        for w in (u + 1)..n {
            pairs += 1;
            if before[w] != after[w] {
                let show = |d: &Option<S>| d.as_ref().map_or("inf".to_string(), S::to_canonical);
                mismatches.push((
                    graph.vertex(u).id.clone(),
                    graph.vertex(w).id.clone(),
                    show(&before[w]),
                    show(&after[w]),
                ));
            }
        }
    }
    Ok(MetricInvarianceReport {
        preserved: mismatches.is_empty(),
        steps: sequence.len(),
        pairs_checked: pairs,
        mismatches,
    })
}
