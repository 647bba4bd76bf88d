//! Named example graphs.

use crate::error::{Error, Result};
use crate::graph::{MetricKind, WeightedDualGraph};
use crate::scalar::Scalar;

/// Minimal snc-model of an elliptic curve with Kodaira type II reduction:
/// a central component of multiplicity 6 meeting components of multiplicity
/// 1, 2 and 3 once each.
pub fn kodaira_ii<S: Scalar>() -> WeightedDualGraph<S> {
    let mut b = WeightedDualGraph::builder(MetricKind::Model).name("kodaira-II");
    let v1 = b.vertex("v1", 1, 0).unwrap();
    let v2 = b.vertex("v2", 2, 0).unwrap();
    let v3 = b.vertex("v3", 3, 0).unwrap();
    let v4 = b.vertex("v4", 6, 0).unwrap();
    for v in [v1, v2, v3] {
        b.edge(v, v4).unwrap();
    }
    b.build().unwrap()
}

/// Minimal snc-model of type `I_n*`: a chain `c0 .. cn` of multiplicity-2
/// components with two multiplicity-1 leaves at each end (four leaves on `c0`
/// when `n = 0`).
pub fn kodaira_in_star<S: Scalar>(n: usize) -> WeightedDualGraph<S> {
    let mut b = WeightedDualGraph::builder(MetricKind::Model).name(format!("kodaira-I{n}*"));
    let chain: Vec<usize> = (0..=n)
        .map(|i| b.vertex(format!("c{i}"), 2, 0).unwrap())
        .collect();
    for w in chain.windows(2) {
        b.edge(w[0], w[1]).unwrap();
    }
    let (first, last) = (chain[0], chain[n]);
    for (leaf, anchor) in [("a1", first), ("a2", first), ("b1", last), ("b2", last)] {
        let l = b.vertex(leaf, 1, 0).unwrap();
        b.edge(anchor, l).unwrap();
    }
    b.build().unwrap()
}

/// Cycle of `n >= 2` reduced rational components.
pub fn cycle<S: Scalar>(n: usize) -> WeightedDualGraph<S> {
    assert!(n >= 2, "a loop-free cycle needs at least two vertices");
    let mut b = WeightedDualGraph::builder(MetricKind::Model).name(format!("cycle-{n}"));
    let vs: Vec<usize> = (0..n)
        .map(|i| b.vertex(format!("v{i}"), 1, 0).unwrap())
        .collect();
    for i in 0..n {
        b.edge(vs[i], vs[(i + 1) % n]).unwrap();
    }
    b.build().unwrap()
}

/// Two vertices joined by three parallel edges.
pub fn theta<S: Scalar>() -> WeightedDualGraph<S> {
    let mut b = WeightedDualGraph::builder(MetricKind::Model).name("theta");
    let x = b.vertex("x", 1, 0).unwrap();
    let y = b.vertex("y", 1, 0).unwrap();
    for _ in 0..3 {
        b.edge(x, y).unwrap();
    }
    b.build().unwrap()
}

/// Two triangles joined by a path of `k >= 1` bridge edges.
pub fn dumbbell<S: Scalar>(k: usize) -> WeightedDualGraph<S> {
    assert!(k >= 1);
    let mut b = WeightedDualGraph::builder(MetricKind::Model).name(format!("dumbbell-{k}"));
    let left: Vec<usize> = (0..3)
        .map(|i| b.vertex(format!("l{i}"), 1, 0).unwrap())
        .collect();
    let right: Vec<usize> = (0..3)
        .map(|i| b.vertex(format!("r{i}"), 1, 0).unwrap())
        .collect();
    for t in [&left, &right] {
        for i in 0..3 {
            b.edge(t[i], t[(i + 1) % 3]).unwrap();
        }
    }
    let mut prev = left[0];
    for i in 1..k {
        let m = b.vertex(format!("p{i}"), 1, 0).unwrap();
        b.edge(prev, m).unwrap();
        prev = m;
    }
    b.edge(prev, right[0]).unwrap();
    b.build().unwrap()
}

/// Path of `n >= 1` reduced rational components.
pub fn path<S: Scalar>(n: usize) -> WeightedDualGraph<S> {
    assert!(n >= 1);
    let mut b = WeightedDualGraph::builder(MetricKind::Model).name(format!("path-{n}"));
    let vs: Vec<usize> = (0..n)
        .map(|i| b.vertex(format!("v{i}"), 1, 0).unwrap())
        .collect();
    for w in vs.windows(2) {
        b.edge(w[0], w[1]).unwrap();
    }
    b.build().unwrap()
}

/// Looks up a fixture by its command-line name. `n` parameterizes the
/// families that need it.
pub fn by_name<S: Scalar>(name: &str, n: Option<usize>) -> Result<WeightedDualGraph<S>> {
    let need = |default: usize, min: usize| -> Result<usize> {
        let k = n.unwrap_or(default);
        if k < min {
            Err(Error::Precondition(format!(
                "fixture `{name}` needs n >= {min}"
            )))
        } else {
            Ok(k)
        }
    };
    match name {
        "kodaira-II" | "kodaira-ii" => Ok(kodaira_ii()),
        "kodaira-In-star" | "kodaira-in-star" => Ok(kodaira_in_star(need(1, 0)?)),
        "cycle" => Ok(cycle(need(3, 2)?)),
        "theta" => Ok(theta()),
        "dumbbell" => Ok(dumbbell(need(1, 1)?)),
        "path" => Ok(path(need(3, 1)?)),
        other => Err(Error::Precondition(format!("unknown fixture `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_genus;
    use crate::Rational as Q;

    #[test]
    fn kodaira_ii_lengths() {
        let g = kodaira_ii::<Q>();
        let mut lengths: Vec<Q> = g.edges().iter().map(|e| e.length.clone()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![Q::frac(1, 18), Q::frac(1, 12), Q::frac(1, 6)]);
        assert_eq!(graph_genus(&g).unwrap(), 0);
    }

    #[test]
    fn in_star_shape() {
        let g = kodaira_in_star::<Q>(1);
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(
            g.vertices().iter().filter(|v| v.multiplicity == 2).count(),
            2
        );
        assert_eq!(
            g.vertices().iter().filter(|v| v.multiplicity == 1).count(),
            4
        );
        let g5 = kodaira_in_star::<Q>(5);
        assert_eq!(g5.num_vertices(), 10);
    }

    #[test]
    fn triangle_has_unit_edges() {
        let g = cycle::<Q>(3);
        assert!(g.edges().iter().all(|e| e.length == Q::from_int(1)));
    }

    #[test]
    fn unknown_fixture() {
        assert!(by_name::<Q>("nope", None).is_err());
        assert!(by_name::<Q>("cycle", Some(1)).is_err());
        assert_eq!(by_name::<Q>("dumbbell", Some(2)).unwrap().num_edges(), 8);
    }
}
