//! Weight functions of pluricanonical forms on the skeleton of a model, the
//! Laplacian identity they satisfy, and Kontsevich–Soibelman skeleta.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::model_ops::{blow_up_interior_point, blow_up_node, blow_up_ray_point, BlowUp};
use crate::potential::divisor::GraphDivisor;
use crate::potential::laplacian::{canonical_divisor, compact_laplacian, laplacian};
use crate::potential::locus::{min_locus, SubgraphLocus};
use crate::potential::plfunction::PlFunction;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayData {
    /// Coefficient of the marked point in the divisor of the form.
    pub deg_div: i64,
}

/// Divisor of an `m`-canonical form on a model: `nu` is the multiplicity of
/// each component (keyed by vertex id), `rays` the coefficient of each marked
/// point (keyed by ray label), and `horizontal_edges` lists the nodes met by
/// the horizontal part of the divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluricanonicalModelData {
    pub m: u64,
    pub nu: BTreeMap<String, i64>,
    #[serde(default)]
    pub rays: BTreeMap<String, RayData>,
    #[serde(default)]
    pub horizontal_edges: BTreeSet<usize>,
}

impl PluricanonicalModelData {
    pub fn new(m: u64) -> Self {
        PluricanonicalModelData {
            m,
            nu: BTreeMap::new(),
            rays: BTreeMap::new(),
            horizontal_edges: BTreeSet::new(),
        }
    }

    pub fn nu_at<S: Scalar>(&self, graph: &WeightedDualGraph<S>, v: usize) -> Result<i64> {
        let id = &graph.vertex(v).id;
        self.nu
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingData(format!("no nu for vertex `{id}`")))
    }

    pub fn deg_div_at<S: Scalar>(&self, graph: &WeightedDualGraph<S>, r: usize) -> Result<i64> {
        let label = &graph.ray(r).label;
        self.rays
            .get(label)
            .map(|d| d.deg_div)
            .ok_or_else(|| Error::MissingData(format!("no data for ray `{label}`")))
    }

    /// Every vertex and ray has data, and every key names something in the
    /// graph.
    pub fn validate<S: Scalar>(&self, graph: &WeightedDualGraph<S>) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Precondition("m must be positive".into()));
        }
        for v in 0..graph.num_vertices() {
            self.nu_at(graph, v)?;
        }
        for r in 0..graph.rays().len() {
            self.deg_div_at(graph, r)?;
        }
        for id in self.nu.keys() {
            graph.vertex_index(id)?;
        }
        for label in self.rays.keys() {
            graph.ray_index(label)?;
        }
        for &e in &self.horizontal_edges {
            graph.edge(e)?;
        }
        Ok(())
    }
}

/// `nu(v) / N(v)` at each vertex.
pub fn vertex_weights<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
) -> Result<Vec<S>> {
    (0..graph.num_vertices())
        .map(|v| {
            Ok(S::frac(
                data.nu_at(graph, v)?,
                graph.vertex(v).multiplicity as i64,
            ))
        })
        .collect()
}

/// The weight function: `nu/N` at vertices, affine on edges, and slope
/// `N (m + deg_div)` along each ray.
pub fn weight_function<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
) -> Result<PlFunction<S>> {
    graph.require_loop_free()?;
    data.validate(graph)?;
    if let Some(&e) = data.horizontal_edges.iter().next() {
        return Err(Error::HorizontalEdge(e));
    }
    let values = vertex_weights(graph, data)?;
    let slopes = (0..graph.rays().len())
        .map(|r| {
            let n = graph.vertex(graph.ray(r).attach).multiplicity as i64;
            Ok(S::from_int(
                n * (data.m as i64 + data.deg_div_at(graph, r)?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    PlFunction::from_vertex_values(graph, values, slopes)
}

/// `deg(x) * deg_div(x)` at the attachment vertex of each marked point `x`.
pub fn pushforward_divisor<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
) -> Result<GraphDivisor<S>> {
    let mut d = GraphDivisor::zero();
    for (r, ray) in graph.rays().iter().enumerate() {
        let c = data.deg_div_at(graph, r)? * ray.degree as i64;
        d.add_at(GraphPoint::Vertex(ray.attach), S::from_int(c));
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy<S> {
    /// `"full"` for the identity with rays, `"compact"` for the one without.
    pub identity: &'static str,
    pub point: GraphPoint<S>,
    pub found: S,
    pub expected: S,
}

/// Both forms of the Laplacian identity for the weight function: with rays,
/// `Δ(wt) = m K`; on the compact part, `Δ(wt) = m K_Sk - ρ_*(div ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianReport<S> {
    pub weight: PlFunction<S>,
    pub laplacian: GraphDivisor<S>,
    pub canonical: GraphDivisor<S>,
    pub compact_laplacian: GraphDivisor<S>,
    pub compact_expected: GraphDivisor<S>,
    pub discrepancies: Vec<Discrepancy<S>>,
}

impl<S: Scalar> LaplacianReport<S> {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn discrepancies<S: Scalar>(
    identity: &'static str,
    found: &GraphDivisor<S>,
    expected: &GraphDivisor<S>,
) -> Vec<Discrepancy<S>> {
    let points: BTreeSet<&GraphPoint<S>> = found.support().chain(expected.support()).collect();
    points
        .into_iter()
        .filter(|p| found.coeff(p) != expected.coeff(p))
        .map(|p| Discrepancy {
            identity,
            point: p.clone(),
            found: found.coeff(p),
            expected: expected.coeff(p),
        })
        .collect()
}

pub fn verify_laplacian_theorem<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
) -> Result<LaplacianReport<S>> {
    let weight = weight_function(graph, data)?;
    let full = laplacian(graph, &weight)?;
    let canonical = canonical_divisor(graph, data.m)?;
    let compact = compact_laplacian(graph, &weight)?;
    let compact_expected =
        canonical_divisor(&graph.without_rays(), data.m)?.minus(&pushforward_divisor(graph, data)?);
    let mut found = discrepancies("full", &full, &canonical);
    found.extend(discrepancies("compact", &compact, &compact_expected));
    Ok(LaplacianReport {
        weight,
        laplacian: full,
        canonical,
        compact_laplacian: compact,
        compact_expected,
        discrepancies: found,
    })
}

/// Union of the faces where `nu/N` is minimal, leaving out edges met by the
/// horizontal part of the divisor. Without such edges the result is checked
/// against the minimum locus of the weight function.
pub fn ks_skeleton<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
) -> Result<SubgraphLocus<S>> {
    graph.require_loop_free()?;
    data.validate(graph)?;
    let weights = vertex_weights(graph, data)?;
    let min = weights.iter().min().cloned().expect("graph has vertices");
    let at_min: Vec<bool> = weights.iter().map(|w| *w == min).collect();
    let mut locus = SubgraphLocus::from_vertices((0..graph.num_vertices()).filter(|&v| at_min[v]));
    for (e, edge) in graph.edges().iter().enumerate() {
        if at_min[edge.a] && at_min[edge.b] && !data.horizontal_edges.contains(&e) {
            locus.insert_edge(graph, e)?;
        }
    }
    if data.horizontal_edges.is_empty() {
        let wt = weight_function(graph, data)?;
        if wt.ray_slopes().iter().all(|s| !s.is_negative()) && min_locus(graph, &wt)? != locus {
            return Err(Error::Internal(
                "essential faces differ from the minimum locus of the weight function".into(),
            ));
        }
    }
    Ok(locus)
}

/// Data on the blow-up of the node of edge `e`: the exceptional component
/// has `nu = nu1 + nu2`.
pub fn blow_up_node_with_data<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
    e: usize,
) -> Result<(WeightedDualGraph<S>, PluricanonicalModelData)> {
    data.validate(graph)?;
    if data.horizontal_edges.contains(&e) {
        return Err(Error::HorizontalEdge(e));
    }
    let edge = graph.edge(e)?;
    let nu = data.nu_at(graph, edge.a)? + data.nu_at(graph, edge.b)?;
    let g = blow_up_node(graph, e)?;
    Ok(with_new_vertex(g, data, nu))
}

/// Data on the blow-up of a smooth point of `v` away from the divisor of the
/// form: the exceptional component has `nu = nu(v) + m`.
pub fn blow_up_interior_with_data<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
    v: usize,
) -> Result<(WeightedDualGraph<S>, PluricanonicalModelData)> {
    data.validate(graph)?;
    if v >= graph.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let nu = data.nu_at(graph, v)? + data.m as i64;
    let g = blow_up_interior_point(graph, v)?;
    Ok(with_new_vertex(g, data, nu))
}

/// Data on the blow-up of the specialization of the marked point of ray `r`:
/// the exceptional component has `nu = nu(v) + m + deg_div(x)` and now
/// carries the ray.
pub fn blow_up_ray_with_data<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
    r: usize,
) -> Result<(WeightedDualGraph<S>, PluricanonicalModelData)> {
    data.validate(graph)?;
    if r >= graph.rays().len() {
        return Err(Error::UnknownRay(format!("#{r}")));
    }
    let v = graph.ray(r).attach;
    let nu = data.nu_at(graph, v)? + data.m as i64 + data.deg_div_at(graph, r)?;
    let g = blow_up_ray_point(graph, r)?;
    Ok(with_new_vertex(g, data, nu))
}

pub fn apply_blow_up_with_data<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
    op: &BlowUp,
) -> Result<(WeightedDualGraph<S>, PluricanonicalModelData)> {
    match op {
        BlowUp::Node(e) => blow_up_node_with_data(graph, data, *e),
        BlowUp::Interior(id) => blow_up_interior_with_data(graph, data, graph.vertex_index(id)?),
    }
}

fn with_new_vertex<S: Scalar>(
    graph: WeightedDualGraph<S>,
    data: &PluricanonicalModelData,
    nu: i64,
) -> (WeightedDualGraph<S>, PluricanonicalModelData) {
    let mut data = data.clone();
    let id = graph.vertex(graph.num_vertices() - 1).id.clone();
    data.nu.insert(id, nu);
    (graph, data)
}

/// Completes `nu` on a reduced model of a pair to consistent data by solving
/// for the ray coefficients: at each vertex the coefficients of its marked
/// points must add up to `m (val + 2g - 2) - sum over neighbours (nu_j - nu_v)`
/// (compact valency). The whole amount goes on the first ray of the vertex.
pub fn complete_ray_data<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    m: u64,
    nu: &[i64],
) -> Result<PluricanonicalModelData> {
    graph.require_reduced()?;
    graph.require_loop_free()?;
    if nu.len() != graph.num_vertices() {
        return Err(Error::MissingData(format!(
            "{} nu values for {} vertices",
            nu.len(),
            graph.num_vertices()
        )));
    }
    let mut data = PluricanonicalModelData::new(m);
    for (v, label) in graph.vertices().iter().enumerate() {
        data.nu.insert(label.id.clone(), nu[v]);
    }
    for v in 0..graph.num_vertices() {
        let mut rays = graph.rays_at(v);
        let first = rays.next().ok_or_else(|| {
            Error::Precondition(format!(
                "vertex `{}` has no marked point",
                graph.vertex(v).id
            ))
        })?;
        if graph.ray(first).degree != 1 {
            return Err(Error::Precondition(
                "marked points must have degree 1".into(),
            ));
        }
        let label = graph.vertex(v);
        let flow: i64 = graph.adjacency()[v]
            .iter()
            .map(|&(_, j)| nu[j] - nu[v])
            .sum();
        let c = m as i64 * (graph.compact_valency(v) as i64 + 2 * label.genus as i64 - 2) - flow;
        data.rays
            .insert(graph.ray(first).label.clone(), RayData { deg_div: c });
        for r in rays {
            data.rays
                .insert(graph.ray(r).label.clone(), RayData { deg_div: 0 });
        }
    }
    Ok(data)
}
