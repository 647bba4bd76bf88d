use crate::error::Result;
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::potential::divisor::GraphDivisor;
use crate::potential::plfunction::PlFunction;
use crate::scalar::Scalar;

/// Sum of outgoing slopes at every point, with ray slopes counted at their
/// attachment vertices.
///
/// The compact degree of the result equals the sum of the ray slopes, since
/// each compact linear piece contributes opposite slopes at its two ends.
pub fn laplacian<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    f: &PlFunction<S>,
) -> Result<GraphDivisor<S>> {
    let mut d = compact_laplacian(graph, f)?;
    for (r, ray) in graph.rays().iter().enumerate() {
        d.add_at(GraphPoint::Vertex(ray.attach), f.ray_slope(r).clone());
    }
    Ok(d)
}

/// Laplacian of the restriction of `f` to the compact part; ray slopes are
/// ignored.
pub fn compact_laplacian<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    f: &PlFunction<S>,
) -> Result<GraphDivisor<S>> {
    f.check_shape(graph)?;
    let mut d = GraphDivisor::zero();
    for (e, edge) in graph.edges().iter().enumerate() {
        let prof = f.profile(graph, e);
        let slopes = f.edge_slopes(graph, e);
        let last = slopes.len() - 1;
        d.add_at(GraphPoint::Vertex(edge.a), slopes[0].clone());
        d.add_at(GraphPoint::Vertex(edge.b), -slopes[last].clone());
        for i in 0..last {
            let p = GraphPoint::Edge {
                edge: e,
                pos: prof[i + 1].0.clone(),
            };
            d.add_at(p, slopes[i + 1].clone() - slopes[i].clone());
        }
    }
    Ok(d)
}

/// `div(f) = -laplacian(f)`: the sum of incoming slopes.
pub fn div<S: Scalar>(graph: &WeightedDualGraph<S>, f: &PlFunction<S>) -> Result<GraphDivisor<S>> {
    Ok(laplacian(graph, f)?.negated())
}

/// `m * sum N(v) (val(v) + 2 g(v) - 2) v`, rays counted in the valency.
pub fn canonical_divisor<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    m: u64,
) -> Result<GraphDivisor<S>> {
    graph.require_loop_free()?;
    let m = S::from_uint(m);
    Ok((0..graph.num_vertices())
        .map(|v| {
            let label = graph.vertex(v);
            let c = graph.valency(v) as i64 + 2 * label.genus as i64 - 2;
            let coeff = S::from_uint(label.multiplicity) * S::from_int(c) * m.clone();
            (GraphPoint::Vertex(v), coeff)
        })
        .collect())
}

/// Genus of the curve a model graph describes, `deg K / 2 + 1` on the
/// compact part. Agrees with the graph genus on reduced graphs.
pub fn model_genus<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<S> {
    let k = canonical_divisor(&graph.without_rays(), 1)?;
    Ok(k.degree() / S::from_int(2) + S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::MetricKind;
    use crate::Rational as Q;

    fn q(n: i64, d: i64) -> Q {
        Q::frac(n, d)
    }

    fn kodaira_divisor(g: &WeightedDualGraph<Q>) -> GraphDivisor<Q> {
        let v = |id: &str| g.vertex_index(id).unwrap();
        [("v4", 6), ("v1", -1), ("v2", -2), ("v3", -3)]
            .into_iter()
            .map(|(id, c)| (GraphPoint::Vertex(v(id)), Q::from_int(c)))
            .collect()
    }

    #[test]
    fn constant_function_has_zero_laplacian() {
        let g = fixtures::theta::<Q>();
        let f = PlFunction::constant(&g, q(7, 3));
        assert!(laplacian(&g, &f).unwrap().is_zero());
        assert!(div(&g, &f).unwrap().is_zero());
    }

    #[test]
    fn distance_on_a_single_edge() {
        let g = fixtures::path::<Q>(2);
        let f = PlFunction::from_vertex_values(&g, vec![q(0, 1), q(1, 1)], vec![]).unwrap();
        let expected: GraphDivisor<Q> =
            GraphDivisor::vertex(0, 1).plus(&GraphDivisor::vertex(1, -1));
        assert_eq!(laplacian(&g, &f).unwrap(), expected);
        assert_eq!(div(&g, &f).unwrap(), expected.negated());
    }

    #[test]
    fn kodaira_weight_laplacian_is_canonical() {
        let g = fixtures::kodaira_ii::<Q>();
        let values = ["v1", "v2", "v3", "v4"].map(|id| g.vertex_index(id).unwrap());
        let mut vals = vec![q(0, 1); 4];
        for (v, val) in values.into_iter().zip([q(1, 1), q(1, 1), q(1, 1), q(5, 6)]) {
            vals[v] = val;
        }
        let f = PlFunction::from_vertex_values(&g, vals, vec![]).unwrap();
        assert_eq!(laplacian(&g, &f).unwrap(), kodaira_divisor(&g));
        assert_eq!(canonical_divisor::<Q>(&g, 1).unwrap(), kodaira_divisor(&g));
    }

    #[test]
    fn canonical_divisor_examples() {
        let c3 = fixtures::cycle::<Q>(3);
        assert!(canonical_divisor(&c3, 2).unwrap().is_zero());
        let p = fixtures::path::<Q>(3);
        let k = canonical_divisor(&p, 1).unwrap();
        assert_eq!(k.coeff(&GraphPoint::Vertex(0)), q(-1, 1));
        assert_eq!(k.coeff(&GraphPoint::Vertex(1)), q(0, 1));
        assert_eq!(k.degree(), q(-2, 1));

        let mut b = WeightedDualGraph::<Q>::builder(MetricKind::Model);
        let v = b.vertex("v", 1, 0).unwrap();
        b.edge(v, v).unwrap();
        assert!(canonical_divisor(&b.build().unwrap(), 1).is_err());
    }

    #[test]
    fn rays_count_in_valency_and_slopes() {
        let mut b = WeightedDualGraph::<Q>::builder(MetricKind::Model);
        let x = b.vertex("x", 2, 0).unwrap();
        let y = b.vertex("y", 1, 0).unwrap();
        b.edge(x, y).unwrap();
        b.ray(x, "p", 2).unwrap();
        let g = b.build().unwrap();
        let k = canonical_divisor(&g, 1).unwrap();
        assert_eq!(k.coeff(&GraphPoint::Vertex(x)), q(0, 1));
        let mut f = PlFunction::constant(&g, q(0, 1));
        f.set_ray_slope(0, q(3, 1));
        let d = laplacian(&g, &f).unwrap();
        assert_eq!(d, GraphDivisor::vertex(x, 3));
        assert!(compact_laplacian(&g, &f).unwrap().is_zero());
    }

    #[test]
    fn breakpoints_carry_slope_changes() {
        let g = fixtures::path::<Q>(2);
        let mut f = PlFunction::constant(&g, q(0, 1));
        f.set_breakpoint(&g, 0, q(1, 2), q(1, 2)).unwrap();
        let d = laplacian(&g, &f).unwrap();
        assert_eq!(d.coeff(&GraphPoint::Vertex(0)), q(1, 1));
        assert_eq!(d.coeff(&GraphPoint::Vertex(1)), q(1, 1));
        assert_eq!(d.coeff(&g.edge_point(0, q(1, 2)).unwrap()), q(-2, 1));
        assert_eq!(d.degree(), Q::from_int(0));
    }

    #[test]
    fn model_genus_of_fibres() {
        assert_eq!(model_genus(&fixtures::kodaira_ii::<Q>()).unwrap(), q(1, 1));
        for n in 0..4 {
            assert_eq!(
                model_genus(&fixtures::kodaira_in_star::<Q>(n)).unwrap(),
                q(1, 1)
            );
        }
        assert_eq!(model_genus(&fixtures::dumbbell::<Q>(2)).unwrap(), q(2, 1));
        assert_eq!(model_genus(&fixtures::path::<Q>(3)).unwrap(), q(0, 1));
    }
}
