//! Subdivisions of a graph at finitely many points, kept as index tables over
//! the original edges rather than as new graphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::potential::plfunction::PlFunction;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub(crate) struct Segment<S> {
    /// Node at `start`.
    pub a: usize,
    /// Node at `end`.
    pub b: usize,
    pub edge: usize,
    pub start: S,
    pub end: S,
}

impl<S: Scalar> Segment<S> {
    pub fn length(&self) -> S {
        self.end.clone() - self.start.clone()
    }

    /// The point at distance `t` from node `from` along the segment.
    pub fn point_from(&self, graph: &WeightedDualGraph<S>, from: usize, t: &S) -> GraphPoint<S> {
        let pos = if from == self.a {
            self.start.clone() + t.clone()
        } else {
            self.end.clone() - t.clone()
        };
        graph
            .edge_point(self.edge, pos)
            .expect("point inside the segment")
    }
}

/// The graph subdivided at a set of compact points. Nodes `0..|V|` are the
/// original vertices in order.
#[derive(Clone, Debug)]
pub(crate) struct Refinement<S> {
    pub nodes: Vec<GraphPoint<S>>,
    pub index: BTreeMap<GraphPoint<S>, usize>,
    pub segments: Vec<Segment<S>>,
    /// `(segment, other node)` per node; a loop segment appears twice.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl<S: Scalar> Refinement<S> {
    pub fn new<'a, I>(graph: &WeightedDualGraph<S>, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GraphPoint<S>>,
    {
        let mut cuts: Vec<Vec<S>> = vec![Vec::new(); graph.num_edges()];
        for p in points {
            graph.validate_point(p)?;
            match p {
                GraphPoint::Vertex(_) => {}
                GraphPoint::Edge { edge, pos } => cuts[*edge].push(pos.clone()),
                GraphPoint::Ray { .. } => {
                    return Err(Error::InvalidPoint(
                        "points on rays cannot be used to subdivide the compact part".into(),
                    ))
                }
            }
        }
        Ok(Self::from_cuts(graph, cuts))
    }

    fn from_cuts(graph: &WeightedDualGraph<S>, mut cuts: Vec<Vec<S>>) -> Self {
        let mut nodes: Vec<GraphPoint<S>> =
            (0..graph.num_vertices()).map(GraphPoint::Vertex).collect();
        let mut segments = Vec::new();
        for (e, edge) in graph.edges().iter().enumerate() {
            let c = &mut cuts[e];
            c.sort();
            c.dedup();
            let mut prev_node = edge.a;
            let mut prev_pos = S::zero();
            for pos in c.iter() {
                let node = nodes.len();
                nodes.push(GraphPoint::Edge {
                    edge: e,
                    pos: pos.clone(),
                });
                segments.push(Segment {
                    a: prev_node,
                    b: node,
                    edge: e,
                    start: prev_pos,
                    end: pos.clone(),
                });
                prev_node = node;
                prev_pos = pos.clone();
            }
            segments.push(Segment {
                a: prev_node,
                b: edge.b,
                edge: e,
                start: prev_pos,
                end: edge.length.clone(),
            });
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        for (s, seg) in segments.iter().enumerate() {
            adj[seg.a].push((s, seg.b));
            adj[seg.b].push((s, seg.a));
        }
        let index = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Refinement {
            nodes,
            index,
            segments,
            adj,
        }
    }

    /// Further subdivision into segments of one common length: the largest
    /// rational dividing every current segment length.
    pub fn lattice(&self, graph: &WeightedDualGraph<S>) -> (Self, S) {
        let unit = self.unit();
        let mut cuts: Vec<Vec<S>> = vec![Vec::new(); graph.num_edges()];
        for (e, edge) in graph.edges().iter().enumerate() {
            let mut pos = unit.clone();
            while pos < edge.length {
                cuts[e].push(pos.clone());
                pos = pos + unit.clone();
            }
        }
        (Self::from_cuts(graph, cuts), unit)
    }

    /// Largest rational dividing every segment length.
    pub fn unit(&self) -> S {
        self.segments
            .iter()
            .map(Segment::length)
            .reduce(|a, b| a.rational_gcd(&b))
            .unwrap_or_else(S::one)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, p: &GraphPoint<S>) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The function with the given node values, linear on every segment,
    /// plus extra interior breakpoints `(edge, pos, value)`.
    pub fn function(
        &self,
        graph: &WeightedDualGraph<S>,
        values: &[S],
        extra: Vec<(usize, S, S)>,
        ray_slopes: Vec<S>,
    ) -> PlFunction<S> {
        let n = graph.num_vertices();
        let mut breaks: Vec<Vec<(S, S)>> = vec![Vec::new(); graph.num_edges()];
        for (node, p) in self.nodes.iter().enumerate().skip(n) {
            if let GraphPoint::Edge { edge, pos } = p {
                breaks[*edge].push((pos.clone(), values[node].clone()));
            }
        }
        for (e, pos, v) in extra {
            breaks[e].push((pos, v));
        }
        for b in &mut breaks {
            b.sort_by(|x, y| x.0.cmp(&y.0));
            b.dedup_by(|x, y| x.0 == y.0);
        }
        PlFunction::from_parts(values[..n].to_vec(), breaks, ray_slopes).simplified(graph)
    }
}
