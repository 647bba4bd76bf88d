use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::potential::plfunction::PlFunction;
use crate::scalar::Scalar;

/// Closed subset of the compact part: vertices, whole closed edges and closed
/// subsegments of the remaining edges.
///
/// The representation is normalized, so two loci are equal as sets iff they
/// are equal as values: vertices lying in the set are always listed, edges
/// contained entirely are listed as whole edges, and the subsegments of each
/// other edge are disjoint, sorted and never reduce to an endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubgraphLocus<S> {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<usize>,
    segments: BTreeMap<usize, Vec<(S, S)>>,
}

impl<S: Scalar> SubgraphLocus<S> {
    pub fn empty() -> Self {
        SubgraphLocus {
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
            segments: BTreeMap::new(),
        }
    }

    pub fn whole(graph: &WeightedDualGraph<S>) -> Self {
        let mut l = Self::empty();
        l.vertices.extend(0..graph.num_vertices());
        l.edges.extend(0..graph.num_edges());
        l
    }

    pub fn from_edges(
        graph: &WeightedDualGraph<S>,
        edges: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut l = Self::empty();
        for e in edges {
            l.insert_edge(graph, e)?;
        }
        Ok(l)
    }

    pub fn from_vertices(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut l = Self::empty();
        l.vertices.extend(vertices);
        l
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<usize> {
        &self.edges
    }

    pub fn segments(&self) -> &BTreeMap<usize, Vec<(S, S)>> {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.segments.is_empty()
    }

    /// Whether the locus is a union of vertices and whole closed edges.
    pub fn is_union_of_faces(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn insert_vertex(&mut self, v: usize) {
        self.vertices.insert(v);
    }

    pub fn insert_edge(&mut self, graph: &WeightedDualGraph<S>, e: usize) -> Result<()> {
        let edge = graph.edge(e)?;
        self.vertices.insert(edge.a);
        self.vertices.insert(edge.b);
        self.edges.insert(e);
        self.segments.remove(&e);
        Ok(())
    }

    /// Adds the closed subsegment `[from, to]` of edge `e`, positions measured
    /// from the edge's `a` endpoint.
    pub fn insert_segment(
        &mut self,
        graph: &WeightedDualGraph<S>,
        e: usize,
        from: S,
        to: S,
    ) -> Result<()> {
        let edge = graph.edge(e)?;
        let (lo, hi) = if from <= to { (from, to) } else { (to, from) };
        if lo.is_negative() || hi > edge.length {
            return Err(Error::PositionOutOfRange {
                edge: e,
                pos: if lo.is_negative() { lo } else { hi }.to_canonical(),
                length: edge.length.to_canonical(),
            });
        }
        if lo.is_zero() {
            self.vertices.insert(edge.a);
        }
        if hi == edge.length {
            self.vertices.insert(edge.b);
        }
        if self.edges.contains(&e) || hi.is_zero() || lo == edge.length {
            return Ok(());
        }
        let list = self.segments.entry(e).or_default();
        list.push((lo, hi));
        list.sort();
        let mut merged: Vec<(S, S)> = Vec::with_capacity(list.len());
        for (a, b) in list.drain(..) {
            match merged.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        if merged.len() == 1 && merged[0].0.is_zero() && merged[0].1 == edge.length {
            self.segments.remove(&e);
            self.edges.insert(e);
        } else {
            *list = merged;
        }
        Ok(())
    }

    pub fn insert_point(&mut self, graph: &WeightedDualGraph<S>, p: &GraphPoint<S>) -> Result<()> {
        graph.validate_point(p)?;
        match p {
            GraphPoint::Vertex(v) => {
                self.vertices.insert(*v);
                Ok(())
            }
            GraphPoint::Edge { edge, pos } => {
                self.insert_segment(graph, *edge, pos.clone(), pos.clone())
            }
            GraphPoint::Ray { .. } => {
                Err(Error::InvalidPoint("loci live on the compact part".into()))
            }
        }
    }

    pub fn union(&self, graph: &WeightedDualGraph<S>, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().copied());
        for &e in &other.edges {
            out.insert_edge(graph, e)?;
        }
        for (&e, segs) in &other.segments {
            for (a, b) in segs {
                out.insert_segment(graph, e, a.clone(), b.clone())?;
            }
        }
        Ok(out)
    }

    pub fn contains(&self, graph: &WeightedDualGraph<S>, p: &GraphPoint<S>) -> bool {
        match p {
            GraphPoint::Vertex(v) => self.vertices.contains(v),
            GraphPoint::Edge { edge, pos } => {
                if graph.validate_point(p).is_err() {
                    return false;
                }
                self.edges.contains(edge)
                    || self
                        .segments
                        .get(edge)
                        .is_some_and(|s| s.iter().any(|(a, b)| a <= pos && pos <= b))
            }
            GraphPoint::Ray { .. } => false,
        }
    }

    /// Builds a normalized locus from raw parts, validating indices.
    pub fn from_parts(
        graph: &WeightedDualGraph<S>,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
        segments: impl IntoIterator<Item = (usize, S, S)>,
    ) -> Result<Self> {
        let mut l = Self::empty();
        for v in vertices {
            if v >= graph.num_vertices() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            l.vertices.insert(v);
        }
        for e in edges {
            l.insert_edge(graph, e)?;
        }
        for (e, a, b) in segments {
            l.insert_segment(graph, e, a, b)?;
        }
        Ok(l)
    }
}

/// Where `f` attains its minimum over the compact part.
///
/// A negative ray slope means `f` is unbounded below along that ray, so the
/// minimum is not attained and an error is returned.
pub fn min_locus<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    f: &PlFunction<S>,
) -> Result<SubgraphLocus<S>> {
    f.check_shape(graph)?;
    if let Some(r) = f.ray_slopes().iter().position(Signed::is_negative) {
        return Err(Error::NegativeRaySlope(graph.ray(r).label.clone()));
    }
    let min = f.min_value();
    let mut locus = SubgraphLocus::empty();
    for v in 0..graph.num_vertices() {
        if *f.vertex_value(v) == min {
            locus.insert_vertex(v);
        }
    }
    for e in 0..graph.num_edges() {
        let prof = f.profile(graph, e);
        for w in prof.windows(2) {
            let (p0, v0) = &w[0];
            let (p1, v1) = &w[1];
            match (*v0 == min, *v1 == min) {
                (true, true) => locus.insert_segment(graph, e, p0.clone(), p1.clone())?,
                (true, false) => locus.insert_segment(graph, e, p0.clone(), p0.clone())?,
                (false, true) => locus.insert_segment(graph, e, p1.clone(), p1.clone())?,
                (false, false) => {}
            }
        }
    }
    Ok(locus)
}
