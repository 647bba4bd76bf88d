//! Seeded random graphs and independent oracles shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skeleta::graph::GraphBuilder;
use skeleta::model_ops::BlowUp;
use skeleta::potential::PlFunction;
use skeleta::weight::{
    blow_up_interior_with_data, blow_up_node_with_data, blow_up_ray_with_data, complete_ray_data,
    PluricanonicalModelData,
};
use skeleta::{Graph, GraphPoint, MetricKind, Rational, Scalar, WeightedDualGraph};

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    Q::frac(n, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random connected loop-free multigraph: a random spanning tree
/// on `vertices` vertices plus `extra` further edges.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub vertices: usize,
    pub extra: usize,
    pub max_mult: u64,
    pub genus_chance: f64,
    pub max_genus: u64,
}

impl Shape {
    pub fn reduced(vertices: usize, extra: usize) -> Self {
        Shape {
            vertices,
            extra,
            max_mult: 1,
            genus_chance: 0.0,
            max_genus: 0,
        }
    }
}

pub fn builder(r: &mut ChaCha8Rng, shape: Shape) -> GraphBuilder<Q> {
    let mut b = WeightedDualGraph::builder(MetricKind::Model);
    for i in 0..shape.vertices {
        let n = r.gen_range(1..=shape.max_mult);
        let g = if shape.max_genus > 0 && r.gen_bool(shape.genus_chance) {
            r.gen_range(1..=shape.max_genus)
        } else {
            0
        };
        b.vertex(format!("u{i}"), n, g).unwrap();
    }
    for i in 1..shape.vertices {
        let j = r.gen_range(0..i);
        b.edge(j, i).unwrap();
    }
    if shape.vertices >= 2 {
        for _ in 0..shape.extra {
            let a = r.gen_range(0..shape.vertices);
            let mut c = r.gen_range(0..shape.vertices - 1);
            if c >= a {
                c += 1;
            }
            b.edge(a, c).unwrap();
        }
    }
    b
}

pub fn random_graph(r: &mut ChaCha8Rng, shape: Shape) -> Graph {
    builder(r, shape).build().unwrap()
}

/// Random blow-up sequence of the given length, generated against the
/// evolving graph. Returns the sequence and the final graph.
pub fn random_blow_ups(r: &mut ChaCha8Rng, graph: &Graph, steps: usize) -> (Vec<BlowUp>, Graph) {
    let mut g = graph.clone();
    let mut ops = Vec::with_capacity(steps);
    for _ in 0..steps {
        let op = if g.num_edges() > 0 && r.gen_bool(0.6) {
            BlowUp::Node(r.gen_range(0..g.num_edges()))
        } else {
            BlowUp::Interior(g.vertex(r.gen_range(0..g.num_vertices())).id.clone())
        };
        g = skeleta::model_ops::apply_blow_up(&g, &op).unwrap();
        ops.push(op);
    }
    (ops, g)
}

/// A reduced model of a pair with one or two degree-1 marked points on every
/// component, random `nu` and matching ray data, followed by `steps` random
/// blow-ups carrying the data along.
pub fn random_pair_model(
    r: &mut ChaCha8Rng,
    m: u64,
    steps: usize,
) -> (Graph, PluricanonicalModelData) {
    let vertices = r.gen_range(1..=5);
    let extra = if vertices > 1 { r.gen_range(0..=2) } else { 0 };
    let shape = Shape {
        vertices,
        extra,
        max_mult: 1,
        genus_chance: 0.3,
        max_genus: 2,
    };
    let mut b = builder(r, shape).pair_model(true);
    let mut label = 0;
    for v in 0..vertices {
        for _ in 0..r.gen_range(1..=2) {
            b.ray(v, format!("p{label}"), 1).unwrap();
            label += 1;
        }
    }
    let mut g = b.build().unwrap();
    let nu: Vec<i64> = (0..vertices).map(|_| r.gen_range(-3..=3)).collect();
    let mut data = complete_ray_data(&g, m, &nu).unwrap();
    for _ in 0..steps {
        (g, data) = match r.gen_range(0..3) {
            0 if g.num_edges() > 0 => {
                blow_up_node_with_data(&g, &data, r.gen_range(0..g.num_edges())).unwrap()
            }
            1 => blow_up_ray_with_data(&g, &data, r.gen_range(0..g.rays().len())).unwrap(),
            _ => blow_up_interior_with_data(&g, &data, r.gen_range(0..g.num_vertices())).unwrap(),
        };
    }
    (g, data)
}

/// Maximally degenerate graph: reduced, rational components, no loops, with
/// first Betti number `genus`.
pub fn random_degenerate(r: &mut ChaCha8Rng, max_vertices: usize, genus: usize) -> Graph {
    let vertices = r.gen_range(2..=max_vertices);
    random_graph(r, Shape::reduced(vertices, genus))
}

/// Reduced graph without rational leaves and of positive genus: rational
/// leaves get genus 1.
pub fn random_semistable(r: &mut ChaCha8Rng) -> Graph {
    let vertices = r.gen_range(2..=7);
    let shape = Shape {
        vertices,
        extra: r.gen_range(0..=3),
        max_mult: 1,
        genus_chance: 0.25,
        max_genus: 2,
    };
    let g = random_graph(r, shape);
    (0..g.num_vertices()).fold(g.clone(), |acc, v| {
        if g.compact_valency(v) == 1 && g.vertex(v).genus == 0 {
            acc.with_genus(v, 1)
        } else {
            acc
        }
    })
}

/// Random subset of `items` of the given size.
pub fn sample<T: Clone>(r: &mut ChaCha8Rng, items: &[T], k: usize) -> Vec<T> {
    items.choose_multiple(r, k).cloned().collect()
}

/// Connectivity of the vertex set using only the edges accepted by `keep`.
pub fn connected_with(graph: &Graph, keep: impl Fn(usize) -> bool) -> bool {
    let n = graph.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for (i, e) in graph.edges().iter().enumerate() {
        if keep(i) {
            let (a, b) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
    }
    parts == 1
}

/// Bridges by deleting each edge in turn.
pub fn bridges_by_deletion(graph: &Graph) -> BTreeSet<usize> {
    (0..graph.num_edges())
        .filter(|&e| !connected_with(graph, |x| x != e))
        .collect()
}

/// Edges of the cycle in `tree + e`: a tree edge lies on it exactly when
/// swapping it for `e` still gives a spanning tree.
pub fn cycle_by_exchange(graph: &Graph, tree: &BTreeSet<usize>, e: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = tree
        .iter()
        .copied()
        .filter(|&t| connected_with(graph, |x| x == e || (x != t && tree.contains(&x))))
        .collect();
    out.insert(e);
    out
}

/// Value of `f` at position `pos` of edge `e` by linear interpolation between
/// the stored vertex values and breakpoints.
pub fn evaluate(graph: &Graph, f: &PlFunction<Q>, e: usize, pos: &Q) -> Q {
    let edge = &graph.edges()[e];
    let mut knots = vec![(q(0, 1), f.vertex_value(edge.a).clone())];
    knots.extend(f.edge_breaks(e).iter().cloned());
    knots.push((edge.length.clone(), f.vertex_value(edge.b).clone()));
    for w in knots.windows(2) {
        let ((p0, v0), (p1, v1)) = (&w[0], &w[1]);
        if p0 <= pos && pos <= p1 {
            return v0.clone()
                + (v1.clone() - v0.clone()) * (pos.clone() - p0.clone())
                    / (p1.clone() - p0.clone());
        }
    }
    panic!("position outside the edge");
}

/// A sample point: edge and step `k` out of `steps`, with its location.
pub struct Sample {
    pub edge: usize,
    pub pos: Q,
    pub at: GraphPoint<Q>,
}

pub fn samples(graph: &Graph, steps: i64) -> Vec<Sample> {
    let mut out = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        for k in 0..=steps {
            let pos = edge.length.clone() * q(k, steps);
            let at = graph.edge_point(e, pos.clone()).unwrap();
            out.push(Sample { edge: e, pos, at });
        }
    }
    out
}

/// Samples where `f` is minimal among all samples, by position in `samples`.
pub fn sampled_minimizers(
    graph: &Graph,
    f: &PlFunction<Q>,
    samples: &[Sample],
) -> (Q, BTreeSet<usize>) {
    let values: Vec<Q> = samples
        .iter()
        .map(|s| evaluate(graph, f, s.edge, &s.pos))
        .collect();
    let min = values.iter().min().unwrap().clone();
    let at = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == min)
        .map(|(i, _)| i)
        .collect();
    (min, at)
}

/// Samples lying on the closed union of the given edges.
pub fn samples_on_edges(
    graph: &Graph,
    edges: &BTreeSet<usize>,
    samples: &[Sample],
) -> BTreeSet<usize> {
    let verts: BTreeSet<usize> = edges
        .iter()
        .flat_map(|&e| [graph.edges()[e].a, graph.edges()[e].b])
        .collect();
    samples
        .iter()
        .enumerate()
        .filter(|(_, s)| match &s.at {
            GraphPoint::Vertex(v) => verts.contains(v),
            _ => edges.contains(&s.edge),
        })
        .map(|(i, _)| i)
        .collect()
}

/// Nonzero coefficients of a divisor.
pub fn divisor_map(d: &skeleta::Divisor) -> BTreeMap<GraphPoint<Q>, Q> {
    d.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (p.clone(), c.clone()))
        .collect()
}

fn add_to(map: &mut BTreeMap<GraphPoint<Q>, Q>, p: GraphPoint<Q>, c: Q) {
    let slot = map.entry(p.clone()).or_insert_with(Q::zero);
    *slot = slot.clone() + c;
    if map[&p].is_zero() {
        map.remove(&p);
    }
}

/// Sum of outgoing slopes at every point, read off the stored vertex values,
/// edge breakpoints and ray slopes. With `rays` false the ray slopes are
/// left out.
pub fn laplacian_oracle(
    graph: &Graph,
    f: &PlFunction<Q>,
    rays: bool,
) -> BTreeMap<GraphPoint<Q>, Q> {
    let mut out = BTreeMap::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        let mut knots = vec![(q(0, 1), f.vertex_value(edge.a).clone())];
        knots.extend(f.edge_breaks(e).iter().cloned());
        knots.push((edge.length.clone(), f.vertex_value(edge.b).clone()));
        let slopes: Vec<Q> = knots
            .windows(2)
            .map(|w| (w[1].1.clone() - w[0].1.clone()) / (w[1].0.clone() - w[0].0.clone()))
            .collect();
        add_to(&mut out, GraphPoint::Vertex(edge.a), slopes[0].clone());
        add_to(
            &mut out,
            GraphPoint::Vertex(edge.b),
            -slopes[slopes.len() - 1].clone(),
        );
        for i in 1..slopes.len() {
            let at = graph.edge_point(e, knots[i].0.clone()).unwrap();
            add_to(&mut out, at, slopes[i].clone() - slopes[i - 1].clone());
        }
    }
    if rays {
        for (r, ray) in graph.rays().iter().enumerate() {
            add_to(
                &mut out,
                GraphPoint::Vertex(ray.attach),
                f.ray_slope(r).clone(),
            );
        }
    }
    out
}

/// `m N(v) (val(v) + 2g(v) - 2)` at each vertex, with or without the rays in
/// the valency.
pub fn canonical_oracle(graph: &Graph, m: i64, rays: bool) -> BTreeMap<GraphPoint<Q>, Q> {
    let mut out = BTreeMap::new();
    for (v, label) in graph.vertices().iter().enumerate() {
        let mut val = graph.edges().iter().filter(|e| e.a == v).count() as i64
            + graph.edges().iter().filter(|e| e.b == v).count() as i64;
        if rays {
            val += graph.rays().iter().filter(|r| r.attach == v).count() as i64;
        }
        let c = m * label.multiplicity as i64 * (val + 2 * label.genus as i64 - 2);
        add_to(&mut out, GraphPoint::Vertex(v), Q::from_int(c));
    }
    out
}

/// All-pairs vertex distances by Floyd-Warshall on stored lengths.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(graph: &Graph) -> Vec<Vec<Option<Q>>> {
    let n = graph.num_vertices();
    let mut d: Vec<Vec<Option<Q>>> = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(Q::zero());
    }
    for e in graph.edges() {
        for (x, y) in [(e.a, e.b), (e.b, e.a)] {
            if d[x][y].as_ref().is_none_or(|c| e.length < *c) {
                d[x][y] = Some(e.length.clone());
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k].clone() else { continue };
            for j in 0..n {
                if let Some(kj) = &d[k][j] {
                    let via = ik.clone() + kj.clone();
                    if d[i][j].as_ref().is_none_or(|c| via < *c) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}

/// Graph genus from the definition: `|E| - |V| + 1 + sum of genera`.
pub fn genus_oracle(graph: &Graph) -> i64 {
    graph.num_edges() as i64 - graph.num_vertices() as i64
        + 1
        + graph.vertices().iter().map(|v| v.genus as i64).sum::<i64>()
}
