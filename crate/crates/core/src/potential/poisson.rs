use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::potential::divisor::GraphDivisor;
use crate::potential::linalg;
use crate::potential::plfunction::PlFunction;
use crate::potential::refine::Refinement;
use crate::scalar::Scalar;

/// The unique piecewise-linear `f` with `laplacian(f) = target`, the given
/// ray slopes and `f(anchor) = 0`.
///
/// A solution exists iff `target` lives on the compact part and its degree
/// equals the sum of the ray slopes.
pub fn solve_poisson<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    target: &GraphDivisor<S>,
    ray_slopes: &[S],
    anchor: &GraphPoint<S>,
) -> Result<PlFunction<S>> {
    if ray_slopes.len() != graph.rays().len() {
        return Err(Error::InvalidFunction(format!(
            "expected {} ray slopes, got {}",
            graph.rays().len(),
            ray_slopes.len()
        )));
    }
    target.validate(graph)?;
    graph.validate_point(anchor)?;
    if target.support().any(GraphPoint::is_on_ray) {
        return Err(Error::InvalidDivisor(
            "target must be supported on the compact part; ray slopes are boundary data".into(),
        ));
    }
    let slope_sum = ray_slopes.iter().fold(S::zero(), |a, s| a + s.clone());
    if target.degree() != slope_sum {
        return Err(Error::DegreeMismatch {
            expected: slope_sum.to_canonical(),
            found: target.degree().to_canonical(),
        });
    }

    let compact_anchor = match anchor {
        GraphPoint::Ray { ray, .. } => GraphPoint::Vertex(graph.ray(*ray).attach),
        p => p.clone(),
    };
    let refinement = Refinement::new(graph, target.support().chain([&compact_anchor]))?;
    let n = refinement.len();
    let mut a = vec![vec![S::zero(); n]; n];
    let mut b = vec![S::zero(); n];
    for seg in &refinement.segments {
        if seg.a == seg.b {
            continue;
        }
        let c = S::one() / seg.length();
        for (x, y) in [(seg.a, seg.b), (seg.b, seg.a)] {
            a[x][y] = a[x][y].clone() + c.clone();
            a[x][x] = a[x][x].clone() - c.clone();
        }
    }
    for (node, p) in refinement.nodes.iter().enumerate() {
        b[node] = target.coeff(p);
    }
    for (r, ray) in graph.rays().iter().enumerate() {
        b[ray.attach] = b[ray.attach].clone() - ray_slopes[r].clone();
    }
    let k = refinement.node(&compact_anchor).expect("anchor is a node");
    a[k] = vec![S::zero(); n];
    a[k][k] = S::one();
    b[k] = match anchor {
        GraphPoint::Ray { ray, dist } => -(ray_slopes[*ray].clone() * dist.clone()),
        _ => S::zero(),
    };
    let values = linalg::solve(a, b)
        .ok_or_else(|| Error::Internal("singular Laplacian system on a connected graph".into()))?;
    Ok(refinement.function(graph, &values, Vec::new(), ray_slopes.to_vec()))
}
