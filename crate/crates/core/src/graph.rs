//! Weighted dual graphs and their metric realizations.
//!
//! A [`WeightedDualGraph`] records the components of a special fiber (vertices
//! labelled by multiplicity and genus), its nodes (edges) and the marked points
//! of a horizontal divisor (rays). Each compact edge stores its length
//! explicitly; lengths start out from the chosen [`MetricKind`] formula and
//! are overwritten by operations that subdivide edges.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{gcd_u64, lcm_u64, Scalar};

/// Which edge-length formula a graph was built with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    /// `1 / (N1 * N2)`.
    #[default]
    Model,
    /// `1 / lcm(N1, N2)`.
    Stable,
}

impl MetricKind {
    pub fn length<S: Scalar>(self, n1: u64, n2: u64) -> S {
        match self {
            MetricKind::Model => S::one() / (S::from_uint(n1) * S::from_uint(n2)),
            MetricKind::Stable => S::one() / S::from_uint(lcm_u64(n1, n2)),
        }
    }
}

/// Smallest positive element of `{a/n1 - b/n2 : a, b integers}`, which is the
/// stable length of an edge between multiplicities `n1` and `n2`.
pub fn stable_gap<S: Scalar>(n1: u64, n2: u64) -> S {
    S::from_uint(gcd_u64(n1, n2)) / (S::from_uint(n1) * S::from_uint(n2))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub id: String,
    pub multiplicity: u64,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge<S> {
    /// Endpoint with the smaller id; interior positions are measured from here.
    pub a: usize,
    pub b: usize,
    pub length: S,
    /// Whether `length` overrides the metric formula.
    pub explicit: bool,
}

impl<S> Edge<S> {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub attach: usize,
    pub label: String,
    /// Degree over the base field of the marked point.
    pub degree: u64,
}

/// A point of the metric realization, including the unbounded rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint<S> {
    Vertex(usize),
    /// Interior point of a compact edge, `0 < pos < length`, measured from `a`.
    Edge {
        edge: usize,
        pos: S,
    },
    /// Point on a ray at positive distance from its attachment vertex.
    Ray {
        ray: usize,
        dist: S,
    },
}

impl<S> GraphPoint<S> {
    pub fn vertex(&self) -> Option<usize> {
        match self {
            GraphPoint::Vertex(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_on_ray(&self) -> bool {
        matches!(self, GraphPoint::Ray { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedDualGraph<S> {
    name: Option<String>,
    metric: MetricKind,
    pair_model: bool,
    vertices: Vec<VertexLabel>,
    edges: Vec<Edge<S>>,
    rays: Vec<Ray>,
}

/// Incremental construction of a [`WeightedDualGraph`]; validation happens in
/// [`GraphBuilder::build`].
#[derive(Clone, Debug)]
pub struct GraphBuilder<S> {
    graph: WeightedDualGraph<S>,
    index: BTreeMap<String, usize>,
}

impl<S: Scalar> GraphBuilder<S> {
    pub fn new(metric: MetricKind) -> Self {
        GraphBuilder {
            graph: WeightedDualGraph {
                name: None,
                metric,
                pair_model: false,
                vertices: Vec::new(),
                edges: Vec::new(),
                rays: Vec::new(),
            },
            index: BTreeMap::new(),
        }
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.graph.name = Some(name.into());
        self
    }

    pub fn pair_model(mut self, flag: bool) -> Self {
        self.graph.pair_model = flag;
        self
    }

    pub fn vertex(
        &mut self,
        id: impl Into<String>,
        multiplicity: u64,
        genus: u64,
    ) -> Result<usize> {
        let id = id.into();
        if multiplicity == 0 {
            return Err(Error::BadMultiplicity(id));
        }
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        let idx = self.graph.vertices.len();
        self.index.insert(id.clone(), idx);
        self.graph.vertices.push(VertexLabel {
            id,
            multiplicity,
            genus,
        });
        Ok(idx)
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Adds an edge whose length follows the metric formula.
    pub fn edge(&mut self, a: usize, b: usize) -> Result<usize> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let (na, nb) = (
            self.graph.vertices[a].multiplicity,
            self.graph.vertices[b].multiplicity,
        );
        let length = self.graph.metric.length(na, nb);
        Ok(self.push_edge(a, b, length, false))
    }

    /// Adds an edge with an explicit length overriding the metric formula.
    pub fn edge_with_length(&mut self, a: usize, b: usize, length: S) -> Result<usize> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if !length.is_positive() {
            return Err(Error::Precondition(format!(
                "edge length must be positive, got {length}"
            )));
        }
        Ok(self.push_edge(a, b, length, true))
    }

    pub fn edge_by_id(&mut self, a: &str, b: &str) -> Result<usize> {
        let (a, b) = (self.lookup(a)?, self.lookup(b)?);
        self.edge(a, b)
    }

    pub fn ray(&mut self, attach: usize, label: impl Into<String>, degree: u64) -> Result<usize> {
        self.check_vertex(attach)?;
        let label = label.into();
        if self.graph.rays.iter().any(|r| r.label == label) {
            return Err(Error::DuplicateId(label));
        }
        if degree == 0 {
            return Err(Error::Precondition(format!("ray `{label}` has degree 0")));
        }
        self.graph.rays.push(Ray {
            attach,
            label,
            degree,
        });
        Ok(self.graph.rays.len() - 1)
    }

    /// Overwrites edge `e` in place. `length = None` uses the metric formula.
    pub(crate) fn set_edge(
        &mut self,
        e: usize,
        a: usize,
        b: usize,
        length: Option<S>,
    ) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if e >= self.graph.edges.len() {
            return Err(Error::UnknownEdge(e));
        }
        let (a, b) = if self.graph.vertices[a].id <= self.graph.vertices[b].id {
            (a, b)
        } else {
            (b, a)
        };
        let explicit = length.is_some();
        let length = length.unwrap_or_else(|| {
            self.graph.metric.length(
                self.graph.vertices[a].multiplicity,
                self.graph.vertices[b].multiplicity,
            )
        });
        self.graph.edges[e] = Edge {
            a,
            b,
            length,
            explicit,
        };
        Ok(())
    }

    pub(crate) fn set_ray_attach(&mut self, r: usize, v: usize) {
        self.graph.rays[r].attach = v;
    }

    pub(crate) fn fresh_id(&self, prefix: &str) -> String {
        fresh_in_builder(self, prefix)
    }

    pub fn build(self) -> Result<WeightedDualGraph<S>> {
        let g = self.graph;
        if g.vertices.is_empty() {
            return Err(Error::Precondition("graph has no vertices".into()));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        if g.pair_model {
            for r in &g.rays {
                let n = g.vertices[r.attach].multiplicity;
                if r.degree != n {
                    return Err(Error::Precondition(format!(
                        "ray `{}` has degree {} but its vertex has multiplicity {}",
                        r.label, r.degree, n
                    )));
                }
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.graph.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    fn push_edge(&mut self, a: usize, b: usize, length: S, explicit: bool) -> usize {
        let (a, b) = if self.graph.vertices[a].id <= self.graph.vertices[b].id {
            (a, b)
        } else {
            (b, a)
        };
        self.graph.edges.push(Edge {
            a,
            b,
            length,
            explicit,
        });
        self.graph.edges.len() - 1
    }
}

impl<S: Scalar> WeightedDualGraph<S> {
    pub fn builder(metric: MetricKind) -> GraphBuilder<S> {
        GraphBuilder::new(metric)
    }

    /// Reopens the graph for modification, keeping vertices, edges and rays.
    pub fn to_builder(&self) -> GraphBuilder<S> {
        let index = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        GraphBuilder {
            graph: self.clone(),
            index,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn is_pair_model(&self) -> bool {
        self.pair_model
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn vertex(&self, v: usize) -> &VertexLabel {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> Result<&Edge<S>> {
        self.edges.get(e).ok_or(Error::UnknownEdge(e))
    }

    pub fn ray(&self, r: usize) -> &Ray {
        &self.rays[r]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn ray_index(&self, label: &str) -> Result<usize> {
        self.rays
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| Error::UnknownRay(label.to_string()))
    }

    /// Edges incident to `v`; a loop appears twice.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.a == v {
                out.push(i);
            }
            if e.b == v {
                out.push(i);
            }
        }
        out
    }

    pub fn rays_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rays
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.attach == v)
            .map(|(i, _)| i)
    }

    /// Number of compact edge ends at `v` (loops count twice).
    pub fn compact_valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a == v) + usize::from(e.b == v))
            .sum()
    }

    /// Compact edges plus rays at `v`.
    pub fn valency(&self, v: usize) -> usize {
        self.compact_valency(v) + self.rays_at(v).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `(edge, neighbour)` pairs per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push((i, e.b));
            if !e.is_loop() {
                adj[e.b].push((i, e.a));
            }
        }
        adj
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub(crate) fn require_loop_free(&self) -> Result<()> {
        match self.edges.iter().position(Edge::is_loop) {
            Some(e) => Err(Error::LoopPresent(e)),
            None => Ok(()),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.vertices.iter().all(|v| v.multiplicity == 1)
    }

    pub(crate) fn require_reduced(&self) -> Result<()> {
        match self.vertices.iter().find(|v| v.multiplicity != 1) {
            Some(v) => Err(Error::NonReduced(v.id.clone())),
            None => Ok(()),
        }
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn total_length(&self) -> S {
        self.edges
            .iter()
            .fold(S::zero(), |acc, e| acc + e.length.clone())
    }

    /// Validated interior or endpoint point of edge `e` at `pos` from `a`.
    /// Positions `0` and `length` are returned as vertex points.
    pub fn edge_point(&self, e: usize, pos: S) -> Result<GraphPoint<S>> {
        let edge = self.edge(e)?;
        if pos.is_zero() {
            return Ok(GraphPoint::Vertex(edge.a));
        }
        if pos == edge.length {
            return Ok(GraphPoint::Vertex(edge.b));
        }
        if pos.is_negative() || pos > edge.length {
            return Err(Error::PositionOutOfRange {
                edge: e,
                pos: pos.to_canonical(),
                length: edge.length.to_canonical(),
            });
        }
        Ok(GraphPoint::Edge { edge: e, pos })
    }

    pub fn ray_point(&self, r: usize, dist: S) -> Result<GraphPoint<S>> {
        if r >= self.rays.len() {
            return Err(Error::UnknownRay(format!("#{r}")));
        }
        if dist.is_zero() {
            return Ok(GraphPoint::Vertex(self.rays[r].attach));
        }
        if dist.is_negative() {
            return Err(Error::InvalidPoint(format!(
                "negative distance on ray `{}`",
                self.rays[r].label
            )));
        }
        Ok(GraphPoint::Ray { ray: r, dist })
    }

    /// Checks that a point refers to existing elements and lies where its
    /// variant says.
    pub fn validate_point(&self, p: &GraphPoint<S>) -> Result<()> {
        match p {
            GraphPoint::Vertex(v) if *v < self.vertices.len() => Ok(()),
            GraphPoint::Vertex(v) => Err(Error::UnknownVertex(format!("#{v}"))),
            GraphPoint::Edge { edge, pos } => {
                let e = self.edge(*edge)?;
                if pos.is_positive() && *pos < e.length {
                    Ok(())
                } else {
                    Err(Error::PositionOutOfRange {
                        edge: *edge,
                        pos: pos.to_canonical(),
                        length: e.length.to_canonical(),
                    })
                }
            }
            GraphPoint::Ray { ray, dist } => {
                if *ray >= self.rays.len() {
                    Err(Error::UnknownRay(format!("#{ray}")))
                } else if !dist.is_positive() {
                    Err(Error::InvalidPoint("ray distance must be positive".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Recomputes every non-explicit edge length for `metric`.
    pub fn with_metric(&self, metric: MetricKind) -> Self {
        let mut g = self.clone();
        g.metric = metric;
        for e in &mut g.edges {
            if !e.explicit {
                e.length =
                    metric.length(g.vertices[e.a].multiplicity, g.vertices[e.b].multiplicity);
            }
        }
        g
    }

    /// Model-metric length of `e` from its endpoint multiplicities.
    pub fn formula_length(&self, e: usize, metric: MetricKind) -> Result<S> {
        let edge = self.edge(e)?;
        Ok(metric.length(
            self.vertices[edge.a].multiplicity,
            self.vertices[edge.b].multiplicity,
        ))
    }

    /// The compact part: same vertices and edges, no rays.
    pub fn without_rays(&self) -> Self {
        let mut g = self.clone();
        g.rays.clear();
        g.pair_model = false;
        g
    }

    /// Same graph with the genus of vertex `v` replaced.
    pub fn with_genus(&self, v: usize, genus: u64) -> Self {
        let mut g = self.clone();
        g.vertices[v].genus = genus;
        g
    }

    /// Subgraph on the vertices with `keep[v]`, with the edges and rays among
    /// them. Edge lengths are kept as stored; the result must be connected.
    pub fn induced(&self, keep: &[bool]) -> Result<Self> {
        let mut b = GraphBuilder::new(self.metric);
        b.graph.name = self.name.clone();
        b.graph.pair_model = self.pair_model;
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (v, label) in self.vertices.iter().enumerate().filter(|(v, _)| keep[*v]) {
            map[v] = b.vertex(label.id.clone(), label.multiplicity, label.genus)?;
        }
        for e in self.edges.iter().filter(|e| keep[e.a] && keep[e.b]) {
            let i = b.edge(map[e.a], map[e.b])?;
            b.graph.edges[i].length = e.length.clone();
            b.graph.edges[i].explicit = e.explicit;
        }
        for r in self.rays.iter().filter(|r| keep[r.attach]) {
            b.ray(map[r.attach], r.label.clone(), r.degree)?;
        }
        b.build()
    }
}

/// Stored length of edge `e`, or the length the given metric formula assigns
/// when the stored length does not override it.
pub fn edge_length<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    e: usize,
    metric: MetricKind,
) -> Result<S> {
    let edge = graph.edge(e)?;
    if edge.explicit {
        Ok(edge.length.clone())
    } else {
        graph.formula_length(e, metric)
    }
}

/// `b1(G) + sum of vertex genera`. Rays are ignored.
pub fn graph_genus<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<u64> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let genera: u64 = graph.vertices().iter().map(|v| v.genus).sum();
    Ok(graph.betti_number() as u64 + genera)
}

/// Shortest-path distances from `source` to every vertex, using stored lengths.
pub fn vertex_distances<S: Scalar>(graph: &WeightedDualGraph<S>, source: usize) -> Vec<Option<S>> {
    multi_source_distances(graph, &[(source, S::zero())])
}

fn multi_source_distances<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    sources: &[(usize, S)],
) -> Vec<Option<S>> {
    let adj = graph.adjacency();
    let mut dist: Vec<Option<S>> = vec![None; graph.num_vertices()];
    let mut heap = BinaryHeap::new();
    for (v, d) in sources {
        if dist[*v].as_ref().is_none_or(|cur| d < cur) {
            dist[*v] = Some(d.clone());
            heap.push(Reverse((d.clone(), *v)));
        }
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].as_ref().is_some_and(|cur| *cur < d) {
            continue;
        }
        for &(e, w) in &adj[v] {
            let nd = d.clone() + graph.edges()[e].length.clone();
            if dist[w].as_ref().is_none_or(|cur| nd < *cur) {
                dist[w] = Some(nd.clone());
                heap.push(Reverse((nd, w)));
            }
        }
    }
    dist
}

/// Vertices a point is attached to, with the distance to each.
fn anchors<S: Scalar>(graph: &WeightedDualGraph<S>, p: &GraphPoint<S>) -> Vec<(usize, S)> {
    match p {
        GraphPoint::Vertex(v) => vec![(*v, S::zero())],
        GraphPoint::Edge { edge, pos } => {
            let e = &graph.edges()[*edge];
            vec![(e.a, pos.clone()), (e.b, e.length.clone() - pos.clone())]
        }
        GraphPoint::Ray { ray, dist } => vec![(graph.ray(*ray).attach, dist.clone())],
    }
}

/// Length of a shortest path between two points, using stored lengths.
///
/// A point on a ray can only be paired with a point of the same ray or with
/// the ray's attachment vertex.
pub fn distance<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    p: &GraphPoint<S>,
    q: &GraphPoint<S>,
) -> Result<S> {
    graph.validate_point(p)?;
    graph.validate_point(q)?;
    if p == q {
        return Ok(S::zero());
    }
    match (p, q) {
        (GraphPoint::Ray { ray: r1, dist: d1 }, GraphPoint::Ray { ray: r2, dist: d2 }) => {
            if r1 == r2 {
                return Ok((d1.clone() - d2.clone()).abs());
            }
            return Err(Error::InvalidPoint(
                "points on different rays have no compact distance".into(),
            ));
        }
        (GraphPoint::Ray { ray, dist }, GraphPoint::Vertex(v))
        | (GraphPoint::Vertex(v), GraphPoint::Ray { ray, dist }) => {
            if graph.ray(*ray).attach == *v {
                return Ok(dist.clone());
            }
            return Err(Error::InvalidPoint(
                "a ray point can only be compared with its own ray closure".into(),
            ));
        }
        (GraphPoint::Ray { .. }, _) | (_, GraphPoint::Ray { .. }) => {
            return Err(Error::InvalidPoint(
                "a ray point can only be compared with its own ray closure".into(),
            ));
        }
        _ => {}
    }
    let mut best: Option<S> = None;
    // Two points on the same edge can also be joined directly along it.
    if let (GraphPoint::Edge { edge: e1, pos: p1 }, GraphPoint::Edge { edge: e2, pos: p2 }) = (p, q)
    {
        if e1 == e2 {
            best = Some((p1.clone() - p2.clone()).abs());
        }
    }
    let dist = multi_source_distances(graph, &anchors(graph, p));
    for (w, extra) in anchors(graph, q) {
        if let Some(d) = &dist[w] {
            let cand = d.clone() + extra;
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.ok_or(Error::Disconnected)
}

/// Replaces each loop at a vertex of multiplicity `w` by two edges through a
/// new genus-0 vertex of multiplicity `2w`; the two halves split the loop's
/// length evenly.
pub fn resolve_loops<S: Scalar>(graph: &WeightedDualGraph<S>) -> WeightedDualGraph<S> {
    if !graph.has_loops() {
        return graph.clone();
    }
    let mut b = graph.to_builder();
    b.graph.edges.clear();
    for e in graph.edges() {
        if !e.is_loop() {
            b.graph.edges.push(e.clone());
            continue;
        }
        let w = graph.vertex(e.a).multiplicity;
        let id = fresh_in_builder(&b, "m");
        let mid = b.vertex(id, 2 * w, 0).expect("fresh id");
        let half = e.length.clone() / S::from_int(2);
        if e.explicit {
            b.edge_with_length(e.a, mid, half.clone()).expect("valid");
            b.edge_with_length(mid, e.a, half).expect("valid");
        } else {
            b.edge(e.a, mid).expect("valid");
            b.edge(mid, e.a).expect("valid");
        }
    }
    b.build()
        .expect("resolving loops keeps the graph connected")
}

pub(crate) fn fresh_in_builder<S: Scalar>(b: &GraphBuilder<S>, prefix: &str) -> String {
    (0usize..)
        .map(|k| format!("{prefix}{k}"))
        .find(|id| !b.index.contains_key(id))
        .unwrap()
}

/// Splits edge `e` at `pos` (measured from its `a` endpoint) by inserting a
/// vertex. Both halves get explicit lengths.
pub fn subdivide_edge_at<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    e: usize,
    pos: S,
    label: VertexLabel,
) -> Result<WeightedDualGraph<S>> {
    let edge = graph.edge(e)?.clone();
    if !pos.is_positive() || pos >= edge.length {
        return Err(Error::PositionOutOfRange {
            edge: e,
            pos: pos.to_canonical(),
            length: edge.length.to_canonical(),
        });
    }
    let mut b = graph.to_builder();
    let mid = b.vertex(label.id, label.multiplicity, label.genus)?;
    let rest = edge.length.clone() - pos.clone();
    let edges = std::mem::take(&mut b.graph.edges);
    for (i, old) in edges.into_iter().enumerate() {
        if i == e {
            b.edge_with_length(edge.a, mid, pos.clone())?;
            b.edge_with_length(mid, edge.b, rest.clone())?;
        } else {
            b.graph.edges.push(old);
        }
    }
    b.build()
}
