//! JSON formats. Rationals are written as canonical `"p/q"` strings; bare
//! integers and integer strings are accepted on input. Vertices and rays are
//! referred to by id and label, edges by index.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, MetricKind, WeightedDualGraph};
use crate::potential::divisor::GraphDivisor;
use crate::potential::lemmas::LemmaReport;
use crate::potential::locus::SubgraphLocus;
use crate::potential::plfunction::PlFunction;
use crate::scalar::Scalar;
use crate::skeleton::Witness;
use crate::weight::LaplacianReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawQ {
    Int(i64),
    Text(String),
}

impl RawQ {
    fn of<S: Scalar>(x: &S) -> Self {
        RawQ::Text(x.to_canonical())
    }

    fn get<S: Scalar>(&self) -> Result<S> {
        match self {
            RawQ::Int(n) => Ok(S::from_int(*n)),
            RawQ::Text(s) => {
                S::parse_canonical(s).ok_or_else(|| Error::Parse(format!("not a rational: `{s}`")))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    #[serde(rename = "N")]
    n: u64,
    #[serde(default)]
    g: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    a: String,
    b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<RawQ>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRay {
    attach: String,
    label: String,
    #[serde(default = "one")]
    degree: u64,
}

fn one() -> u64 {
    1
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    metric: MetricKind,
    #[serde(default, skip_serializing_if = "is_false")]
    pair_model: bool,
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    rays: Vec<RawRay>,
}

pub fn graph_to_value<S: Scalar>(graph: &WeightedDualGraph<S>) -> Value {
    let id = |v: usize| graph.vertex(v).id.clone();
    let raw = RawGraph {
        name: graph.name().map(str::to_string),
        metric: graph.metric(),
        pair_model: graph.is_pair_model(),
        vertices: graph
            .vertices()
            .iter()
            .map(|v| RawVertex {
                id: v.id.clone(),
                n: v.multiplicity,
                g: v.genus,
            })
            .collect(),
        edges: graph
            .edges()
            .iter()
            .map(|e| RawEdge {
                a: id(e.a),
                b: id(e.b),
                length: e.explicit.then(|| RawQ::of(&e.length)),
            })
            .collect(),
        rays: graph
            .rays()
            .iter()
            .map(|r| RawRay {
                attach: id(r.attach),
                label: r.label.clone(),
                degree: r.degree,
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("graph serializes")
}

pub fn graph_from_value<S: Scalar>(value: Value) -> Result<WeightedDualGraph<S>> {
    let raw: RawGraph = serde_json::from_value(value)?;
    let mut b = WeightedDualGraph::builder(raw.metric).pair_model(raw.pair_model);
    if let Some(name) = raw.name {
        b = b.name(name);
    }
    for v in raw.vertices {
        b.vertex(v.id, v.n, v.g)?;
    }
    for e in raw.edges {
        let (a, c) = (b.lookup(&e.a)?, b.lookup(&e.b)?);
        match e.length {
            Some(len) => b.edge_with_length(a, c, len.get()?)?,
            None => b.edge(a, c)?,
        };
    }
    for r in raw.rays {
        let v = b.lookup(&r.attach)?;
        b.ray(v, r.label, r.degree)?;
    }
    b.build()
}

pub fn graph_to_json<S: Scalar>(graph: &WeightedDualGraph<S>) -> String {
    pretty(&graph_to_value(graph))
}

pub fn graph_from_json<S: Scalar>(text: &str) -> Result<WeightedDualGraph<S>> {
    graph_from_value(serde_json::from_str(text)?)
}

pub fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("values serialize")
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPoint {
    Vertex { vertex: String },
    Edge { edge: usize, pos: RawQ },
    Ray { ray: String, dist: RawQ },
}

pub fn point_to_value<S: Scalar>(graph: &WeightedDualGraph<S>, p: &GraphPoint<S>) -> Value {
    let raw = match p {
        GraphPoint::Vertex(v) => RawPoint::Vertex {
            vertex: graph.vertex(*v).id.clone(),
        },
        GraphPoint::Edge { edge, pos } => RawPoint::Edge {
            edge: *edge,
            pos: RawQ::of(pos),
        },
        GraphPoint::Ray { ray, dist } => RawPoint::Ray {
            ray: graph.ray(*ray).label.clone(),
            dist: RawQ::of(dist),
        },
    };
    serde_json::to_value(raw).expect("point serializes")
}

/// Endpoints of edges and the start of rays are returned as vertex points.
pub fn point_from_value<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    value: Value,
) -> Result<GraphPoint<S>> {
    let raw: RawPoint = serde_json::from_value(value)?;
    point_from_raw(graph, raw)
}

fn point_from_raw<S: Scalar>(graph: &WeightedDualGraph<S>, raw: RawPoint) -> Result<GraphPoint<S>> {
    match raw {
        RawPoint::Vertex { vertex } => Ok(GraphPoint::Vertex(graph.vertex_index(&vertex)?)),
        RawPoint::Edge { edge, pos } => graph.edge_point(edge, pos.get()?),
        RawPoint::Ray { ray, dist } => graph.ray_point(graph.ray_index(&ray)?, dist.get()?),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    point: RawPoint,
    coeff: RawQ,
}

pub fn divisor_to_value<S: Scalar>(graph: &WeightedDualGraph<S>, d: &GraphDivisor<S>) -> Value {
    Value::Array(
        d.iter()
            .map(|(p, c)| json!({"point": point_to_value(graph, p), "coeff": c.to_canonical()}))
            .collect(),
    )
}

pub fn divisor_from_value<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    value: Value,
) -> Result<GraphDivisor<S>> {
    let raw: Vec<RawTerm> = serde_json::from_value(value)?;
    let mut d = GraphDivisor::zero();
    for t in raw {
        d.add_at(point_from_raw(graph, t.point)?, t.coeff.get()?);
    }
    Ok(d)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValue {
    point: RawPoint,
    value: RawQ,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlope {
    ray: String,
    slope: RawQ,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunction {
    values: Vec<RawValue>,
    #[serde(default)]
    ray_slopes: Vec<RawSlope>,
}

/// `{"values": [{point, value}], "ray_slopes": [{ray, slope}]}`: the value at
/// every vertex and at every interior breakpoint, and the outgoing slope
/// along every ray.
pub fn function_to_value<S: Scalar>(graph: &WeightedDualGraph<S>, f: &PlFunction<S>) -> Value {
    let mut values: Vec<Value> = (0..graph.num_vertices())
        .map(|v| json!({"point": point_to_value(graph, &GraphPoint::Vertex(v)), "value": f.vertex_value(v).to_canonical()}))
        .collect();
    for e in 0..graph.num_edges() {
        for (pos, val) in f.edge_breaks(e) {
            let p = GraphPoint::Edge {
                edge: e,
                pos: pos.clone(),
            };
            values.push(json!({"point": point_to_value(graph, &p), "value": val.to_canonical()}));
        }
    }
    let slopes: Vec<Value> = f
        .ray_slopes()
        .iter()
        .enumerate()
        .map(|(r, s)| json!({"ray": graph.ray(r).label, "slope": s.to_canonical()}))
        .collect();
    json!({"values": values, "ray_slopes": slopes})
}

/// Inverse of [`function_to_value`]. Every vertex needs a value; missing ray
/// slopes default to 0.
pub fn function_from_value<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    value: Value,
) -> Result<PlFunction<S>> {
    let raw: RawFunction = serde_json::from_value(value)?;
    let mut vertex_values: Vec<Option<S>> = vec![None; graph.num_vertices()];
    let mut breaks = Vec::new();
    for entry in raw.values {
        let val = entry.value.get()?;
        match point_from_raw(graph, entry.point)? {
            GraphPoint::Vertex(v) => vertex_values[v] = Some(val),
            GraphPoint::Edge { edge, pos } => breaks.push((edge, pos, val)),
            GraphPoint::Ray { .. } => {
                return Err(Error::InvalidFunction(
                    "values on rays are given by slopes".into(),
                ))
            }
        }
    }
    let values = vertex_values
        .into_iter()
        .enumerate()
        .map(|(v, x)| {
            x.ok_or_else(|| {
                Error::InvalidFunction(format!("no value at vertex `{}`", graph.vertex(v).id))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut slopes = vec![S::zero(); graph.rays().len()];
    for s in raw.ray_slopes {
        slopes[graph.ray_index(&s.ray)?] = s.slope.get()?;
    }
    let mut f = PlFunction::from_vertex_values(graph, values, slopes)?;
    for (e, pos, val) in breaks {
        f.set_breakpoint(graph, e, pos, val)?;
    }
    Ok(f)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSegment {
    edge: usize,
    from: RawQ,
    to: RawQ,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawLocus {
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<usize>,
    #[serde(default)]
    segments: Vec<RawSegment>,
}

pub fn locus_to_value<S: Scalar>(graph: &WeightedDualGraph<S>, l: &SubgraphLocus<S>) -> Value {
    let raw = RawLocus {
        vertices: l
            .vertices()
            .iter()
            .map(|&v| graph.vertex(v).id.clone())
            .collect(),
        edges: l.edges().iter().copied().collect(),
        segments: l
            .segments()
            .iter()
            .flat_map(|(&e, segs)| {
                segs.iter().map(move |(a, b)| RawSegment {
                    edge: e,
                    from: RawQ::of(a),
                    to: RawQ::of(b),
                })
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("locus serializes")
}

pub fn locus_from_value<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    value: Value,
) -> Result<SubgraphLocus<S>> {
    let raw: RawLocus = serde_json::from_value(value)?;
    let vertices = raw
        .vertices
        .iter()
        .map(|id| graph.vertex_index(id))
        .collect::<Result<Vec<_>>>()?;
    let segments = raw
        .segments
        .into_iter()
        .map(|s| Ok((s.edge, s.from.get()?, s.to.get()?)))
        .collect::<Result<Vec<_>>>()?;
    SubgraphLocus::from_parts(graph, vertices, raw.edges, segments)
}

pub fn lemma_report_to_value<S: Scalar>(graph: &WeightedDualGraph<S>, r: &LemmaReport<S>) -> Value {
    let hypotheses: BTreeMap<&str, bool> =
        r.hypotheses.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    json!({
        "passed": r.passed(),
        "hypotheses": hypotheses,
        "failed_hypotheses": r.failed_hypotheses(),
        "locus": r.locus.as_ref().map(|l| locus_to_value(graph, l)),
        "expected": r.expected.as_ref().map(|l| locus_to_value(graph, l)),
    })
}

/// The audit bundle of a witness: tree, divisor, function, locus and the
/// lemma check.
pub fn witness_to_value<S: Scalar>(graph: &WeightedDualGraph<S>, w: &Witness<S>) -> Value {
    json!({
        "m": w.m,
        "tree": w.tree,
        "divisor": divisor_to_value(graph, &w.divisor),
        "function": function_to_value(graph, &w.function),
        "locus": locus_to_value(graph, &w.locus),
        "lemma": lemma_report_to_value(graph, &w.report),
    })
}

pub fn laplacian_report_to_value<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    r: &LaplacianReport<S>,
) -> Value {
    let discrepancies: Vec<Value> = r
        .discrepancies
        .iter()
        .map(|d| {
            json!({
                "identity": d.identity,
                "point": point_to_value(graph, &d.point),
                "found": d.found.to_canonical(),
                "expected": d.expected.to_canonical(),
            })
        })
        .collect();
    json!({
        "holds": r.holds(),
        "weight": function_to_value(graph, &r.weight),
        "laplacian": divisor_to_value(graph, &r.laplacian),
        "laplacian_text": format_divisor(graph, &r.laplacian),
        "canonical": divisor_to_value(graph, &r.canonical),
        "compact_laplacian": divisor_to_value(graph, &r.compact_laplacian),
        "compact_expected": divisor_to_value(graph, &r.compact_expected),
        "discrepancies": discrepancies,
    })
}

/// Human-readable divisor such as `-v1 - 2v2 - 3v3 + 6v4`. Interior points
/// print as `e<index>@<pos>`, ray points as `<label>@<dist>`.
pub fn format_divisor<S: Scalar>(graph: &WeightedDualGraph<S>, d: &GraphDivisor<S>) -> String {
    if d.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (p, c)) in d.iter().enumerate() {
        let name = match p {
            GraphPoint::Vertex(v) => graph.vertex(*v).id.clone(),
            GraphPoint::Edge { edge, pos } => format!("e{edge}@{pos}"),
            GraphPoint::Ray { ray, dist } => format!("{}@{dist}", graph.ray(*ray).label),
        };
        let mag = c.abs();
        let sign = match (i, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coeff = if mag.is_one() {
            String::new()
        } else if mag.is_integer() {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        out.push_str(&format!("{sign}{coeff}{name}"));
    }
    out
}
