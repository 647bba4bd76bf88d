use crate::error::{Error, Result};
use crate::graph::{edge_length, GraphPoint, MetricKind, WeightedDualGraph};
use crate::scalar::Scalar;

/// Continuous piecewise-linear function on the metric realization of a graph.
///
/// Values are stored at every vertex and at finitely many interior
/// breakpoints of each edge; the function is linear between consecutive
/// stored points. On each ray it is affine with the declared slope, measured
/// away from the attachment vertex. Continuity holds by construction because
/// edge ends read the shared vertex values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlFunction<S> {
    vertex_values: Vec<S>,
    /// Per edge, interior `(position, value)` pairs sorted by position.
    edge_breaks: Vec<Vec<(S, S)>>,
    ray_slopes: Vec<S>,
}

impl<S: Scalar> PlFunction<S> {
    pub fn constant(graph: &WeightedDualGraph<S>, c: S) -> Self {
        PlFunction {
            vertex_values: vec![c; graph.num_vertices()],
            edge_breaks: vec![Vec::new(); graph.num_edges()],
            ray_slopes: vec![S::zero(); graph.rays().len()],
        }
    }

    /// Function that is linear on every edge with the given vertex values.
    pub fn from_vertex_values(
        graph: &WeightedDualGraph<S>,
        values: Vec<S>,
        ray_slopes: Vec<S>,
    ) -> Result<Self> {
        if values.len() != graph.num_vertices() {
            return Err(Error::InvalidFunction(format!(
                "expected {} vertex values, got {}",
                graph.num_vertices(),
                values.len()
            )));
        }
        if ray_slopes.len() != graph.rays().len() {
            return Err(Error::InvalidFunction(format!(
                "expected {} ray slopes, got {}",
                graph.rays().len(),
                ray_slopes.len()
            )));
        }
        Ok(PlFunction {
            vertex_values: values,
            edge_breaks: vec![Vec::new(); graph.num_edges()],
            ray_slopes,
        })
    }

    /// Inserts or overwrites the value at an interior point of edge `e`.
    pub fn set_breakpoint(
        &mut self,
        graph: &WeightedDualGraph<S>,
        e: usize,
        pos: S,
        value: S,
    ) -> Result<()> {
        let len = &graph.edge(e)?.length;
        if !pos.is_positive() || pos >= *len {
            return Err(Error::PositionOutOfRange {
                edge: e,
                pos: pos.to_canonical(),
                length: len.to_canonical(),
            });
        }
        let breaks = &mut self.edge_breaks[e];
        match breaks.binary_search_by(|(p, _)| p.cmp(&pos)) {
            Ok(i) => breaks[i].1 = value,
            Err(i) => breaks.insert(i, (pos, value)),
        }
        Ok(())
    }

    pub fn set_ray_slope(&mut self, r: usize, slope: S) {
        self.ray_slopes[r] = slope;
    }

    pub fn vertex_value(&self, v: usize) -> &S {
        &self.vertex_values[v]
    }

    pub fn vertex_values(&self) -> &[S] {
        &self.vertex_values
    }

    pub fn edge_breaks(&self, e: usize) -> &[(S, S)] {
        &self.edge_breaks[e]
    }

    pub fn ray_slope(&self, r: usize) -> &S {
        &self.ray_slopes[r]
    }

    pub fn ray_slopes(&self) -> &[S] {
        &self.ray_slopes
    }

    /// Checks that the function's shape matches `graph`.
    pub fn check_shape(&self, graph: &WeightedDualGraph<S>) -> Result<()> {
        if self.vertex_values.len() != graph.num_vertices()
            || self.edge_breaks.len() != graph.num_edges()
            || self.ray_slopes.len() != graph.rays().len()
        {
            return Err(Error::InvalidFunction(
                "function does not match the graph's vertices, edges and rays".into(),
            ));
        }
        for (e, breaks) in self.edge_breaks.iter().enumerate() {
            let len = &graph.edges()[e].length;
            let mut prev = S::zero();
            for (p, _) in breaks {
                if *p <= prev || p >= len {
                    return Err(Error::InvalidFunction(format!(
                        "breakpoints on edge {e} are not strictly increasing inside the edge"
                    )));
                }
                prev = p.clone();
            }
        }
        Ok(())
    }

    /// `(position, value)` along edge `e`, including both endpoints.
    pub fn profile(&self, graph: &WeightedDualGraph<S>, e: usize) -> Vec<(S, S)> {
        let edge = &graph.edges()[e];
        let mut out = Vec::with_capacity(self.edge_breaks[e].len() + 2);
        out.push((S::zero(), self.vertex_values[edge.a].clone()));
        out.extend(self.edge_breaks[e].iter().cloned());
        out.push((edge.length.clone(), self.vertex_values[edge.b].clone()));
        out
    }

    fn value_on_edge(&self, graph: &WeightedDualGraph<S>, e: usize, pos: &S) -> S {
        let prof = self.profile(graph, e);
        let i = prof.partition_point(|(p, _)| p <= pos);
        if i == 0 {
            return prof[0].1.clone();
        }
        if i == prof.len() {
            return prof[i - 1].1.clone();
        }
        let (p0, v0) = &prof[i - 1];
        let (p1, v1) = &prof[i];
        v0.clone()
            + (v1.clone() - v0.clone()) * (pos.clone() - p0.clone()) / (p1.clone() - p0.clone())
    }

    pub fn value_at(&self, graph: &WeightedDualGraph<S>, p: &GraphPoint<S>) -> Result<S> {
        graph.validate_point(p)?;
        Ok(match p {
            GraphPoint::Vertex(v) => self.vertex_values[*v].clone(),
            GraphPoint::Edge { edge, pos } => self.value_on_edge(graph, *edge, pos),
            GraphPoint::Ray { ray, dist } => {
                self.vertex_values[graph.ray(*ray).attach].clone()
                    + self.ray_slopes[*ray].clone() * dist.clone()
            }
        })
    }

    /// Pointwise sum; both functions must live on `graph`.
    pub fn add(&self, graph: &WeightedDualGraph<S>, other: &Self) -> Result<Self> {
        self.check_shape(graph)?;
        other.check_shape(graph)?;
        let vertex_values = self
            .vertex_values
            .iter()
            .zip(&other.vertex_values)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        let ray_slopes = self
            .ray_slopes
            .iter()
            .zip(&other.ray_slopes)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        let mut edge_breaks = Vec::with_capacity(graph.num_edges());
        for e in 0..graph.num_edges() {
            let mut positions: Vec<S> = self.edge_breaks[e]
                .iter()
                .chain(&other.edge_breaks[e])
                .map(|(p, _)| p.clone())
                .collect();
            positions.sort();
            positions.dedup();
            let breaks = positions
                .into_iter()
                .map(|p| {
                    let v = self.value_on_edge(graph, e, &p) + other.value_on_edge(graph, e, &p);
                    (p, v)
                })
                .collect();
            edge_breaks.push(breaks);
        }
        Ok(PlFunction {
            vertex_values,
            edge_breaks,
            ray_slopes,
        })
    }

    pub fn scaled(&self, k: &S) -> Self {
        PlFunction {
            vertex_values: self
                .vertex_values
                .iter()
                .map(|v| v.clone() * k.clone())
                .collect(),
            edge_breaks: self
                .edge_breaks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|(p, v)| (p.clone(), v.clone() * k.clone()))
                        .collect()
                })
                .collect(),
            ray_slopes: self
                .ray_slopes
                .iter()
                .map(|s| s.clone() * k.clone())
                .collect(),
        }
    }

    pub fn shifted(&self, c: &S) -> Self {
        PlFunction {
            vertex_values: self
                .vertex_values
                .iter()
                .map(|v| v.clone() + c.clone())
                .collect(),
            edge_breaks: self
                .edge_breaks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|(p, v)| (p.clone(), v.clone() + c.clone()))
                        .collect()
                })
                .collect(),
            ray_slopes: self.ray_slopes.clone(),
        }
    }

    /// Drops interior breakpoints where the slope does not change.
    pub fn simplified(&self, graph: &WeightedDualGraph<S>) -> Self {
        let mut out = self.clone();
        for e in 0..graph.num_edges() {
            let prof = self.profile(graph, e);
            let mut kept: Vec<(S, S)> = vec![prof[0].clone()];
            for i in 1..prof.len() - 1 {
                let (p0, v0) = kept.last().unwrap();
                let (p1, v1) = &prof[i];
                let (p2, v2) = &prof[i + 1];
                let left = (v1.clone() - v0.clone()) * (p2.clone() - p1.clone());
                let right = (v2.clone() - v1.clone()) * (p1.clone() - p0.clone());
                if left != right {
                    kept.push(prof[i].clone());
                }
            }
            out.edge_breaks[e] = kept.into_iter().skip(1).collect();
        }
        out
    }

    /// Minimum over the compact part, attained at a vertex or a breakpoint.
    pub fn min_value(&self) -> S {
        self.vertex_values
            .iter()
            .chain(self.edge_breaks.iter().flatten().map(|(_, v)| v))
            .min()
            .cloned()
            .expect("a graph has at least one vertex")
    }

    /// Shift so that the minimum over the compact part is zero.
    pub fn min_normalized(&self) -> Self {
        self.shifted(&-self.min_value())
    }

    /// Slopes of the linear pieces of edge `e` in the direction `a -> b`.
    pub fn edge_slopes(&self, graph: &WeightedDualGraph<S>, e: usize) -> Vec<S> {
        self.profile(graph, e)
            .windows(2)
            .map(|w| (w[1].1.clone() - w[0].1.clone()) / (w[1].0.clone() - w[0].0.clone()))
            .collect()
    }

    /// Whether every slope is an integer when edges carry the lengths of
    /// `metric`. Edges with explicit lengths keep their stored length.
    pub fn is_integral(&self, graph: &WeightedDualGraph<S>, metric: MetricKind) -> bool {
        if !self.ray_slopes.iter().all(S::is_integer) {
            return false;
        }
        (0..graph.num_edges()).all(|e| {
            let stored = graph.edges()[e].length.clone();
            let len = edge_length(graph, e, metric).expect("edge exists");
            let factor = stored / len;
            self.edge_slopes(graph, e)
                .into_iter()
                .all(|s| (s * factor.clone()).is_integer())
        })
    }

    /// Whether the function is constant on the compact part.
    pub fn is_constant(&self) -> bool {
        let first = &self.vertex_values[0];
        self.vertex_values.iter().all(|v| v == first)
            && self.edge_breaks.iter().flatten().all(|(_, v)| v == first)
    }

    pub(crate) fn from_parts(
        vertex_values: Vec<S>,
        edge_breaks: Vec<Vec<(S, S)>>,
        ray_slopes: Vec<S>,
    ) -> Self {
        PlFunction {
            vertex_values,
            edge_breaks,
            ray_slopes,
        }
    }
}
