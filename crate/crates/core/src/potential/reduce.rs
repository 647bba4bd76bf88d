//! Reduced divisors on metric graphs.
//!
//! The reduction runs in two phases. First the divisor is made effective away
//! from `q` on the lattice subdivision whose segments all have one common
//! length: nodes are visited from farthest to nearest in breadth-first order
//! from `q`, and a node in debt pulls chips from the set of nodes visited
//! before it. Then the metric burning algorithm moves chips towards `q` until
//! a fire started at `q` burns the whole graph. Every move is recorded as a
//! piecewise-linear function, so the result comes with `f` such that
//! `D' = D + div(f)`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::potential::divisor::GraphDivisor;
use crate::potential::plfunction::PlFunction;
use crate::potential::refine::Refinement;
use crate::scalar::Scalar;

const MAX_BURN_ROUNDS: usize = 1_000_000;

/// The `q`-reduced divisor equivalent to `d`, with `f` such that
/// `reduced = d + div(f)`.
///
/// Rays are ignored: the function returned has zero ray slopes. Divisors
/// must have integer coefficients and live on the compact part.
pub fn reduce_divisor<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    d: &GraphDivisor<S>,
    q: &GraphPoint<S>,
) -> Result<(GraphDivisor<S>, PlFunction<S>)> {
    d.validate(graph)?;
    graph.validate_point(q)?;
    if q.is_on_ray() || d.support().any(GraphPoint::is_on_ray) {
        return Err(Error::InvalidDivisor(
            "reduction works on the compact part; found a point on a ray".into(),
        ));
    }
    if !d.is_integral() {
        return Err(Error::InvalidDivisor(
            "coefficients must be integers".into(),
        ));
    }
    let (d1, f1) = effective_off(graph, d, q)?;
    let (d2, f2) = burn(graph, d1, q)?;
    Ok((d2, f1.add(graph, &f2)?.simplified(graph)))
}

/// Phase one: an equivalent divisor that is effective away from `q`.
fn effective_off<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    d: &GraphDivisor<S>,
    q: &GraphPoint<S>,
) -> Result<(GraphDivisor<S>, PlFunction<S>)> {
    let coarse = Refinement::new(graph, d.support().chain([q]))?;
    let (h, unit) = coarse.lattice(graph);
    let n = h.len();
    let mut chips: Vec<S> = h.nodes.iter().map(|p| d.coeff(p)).collect();
    let mut potential = vec![S::zero(); n];

    let root = h.node(q).expect("q is a lattice node");
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(_, w) in &h.adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }

    for idx in (1..n).rev() {
        let v = order[idx];
        if !chips[v].is_negative() {
            continue;
        }
        // Fire the set of nodes earlier in the order.
        let in_set = |x: usize| position[x] < idx;
        let inflow = h.adj[v].iter().filter(|&&(_, w)| in_set(w)).count();
        let k = (-chips[v].clone() / S::from_uint(inflow as u64))
            .ceil_int()
            .ok_or_else(|| Error::Internal("chip count does not fit a machine integer".into()))?;
        let k = S::from_int(k);
        for seg in &h.segments {
            match (in_set(seg.a), in_set(seg.b)) {
                (true, false) => {
                    chips[seg.a] = chips[seg.a].clone() - k.clone();
                    chips[seg.b] = chips[seg.b].clone() + k.clone();
                }
                (false, true) => {
                    chips[seg.b] = chips[seg.b].clone() - k.clone();
                    chips[seg.a] = chips[seg.a].clone() + k.clone();
                }
                _ => {}
            }
        }
        let lift = k * unit.clone();
        for (x, value) in potential.iter_mut().enumerate() {
            if !in_set(x) {
                *value = value.clone() + lift.clone();
            }
        }
    }

    let reduced = h
        .nodes
        .iter()
        .cloned()
        .zip(chips)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let f = h.function(
        graph,
        &potential,
        Vec::new(),
        vec![S::zero(); graph.rays().len()],
    );
    Ok((reduced, f))
}

/// Phase two: burning from `q`, starting from a divisor effective off `q`.
fn burn<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    mut d: GraphDivisor<S>,
    q: &GraphPoint<S>,
) -> Result<(GraphDivisor<S>, PlFunction<S>)> {
    let zero_slopes = vec![S::zero(); graph.rays().len()];
    let mut f = PlFunction::constant(graph, S::zero());
    for _ in 0..MAX_BURN_ROUNDS {
        let r = Refinement::new(graph, d.support().chain([q]))?;
        let burnt = burnt_nodes(&r, &d, r.node(q).expect("q is a node"));
        if burnt.iter().all(|&b| b) {
            return Ok((d, f));
        }
        let boundary: Vec<(usize, usize)> = r
            .segments
            .iter()
            .enumerate()
            .filter_map(|(s, seg)| match (burnt[seg.a], burnt[seg.b]) {
                (false, true) => Some((s, seg.a)),
                (true, false) => Some((s, seg.b)),
                _ => None,
            })
            .collect();
        let eps = boundary
            .iter()
            .map(|&(s, _)| r.segments[s].length())
            .min()
            .expect("an unburnt set in a connected graph has a boundary");
        let values: Vec<S> = burnt
            .iter()
            .map(|&b| if b { eps.clone() } else { S::zero() })
            .collect();
        let mut extra = Vec::new();
        for &(s, from) in &boundary {
            let seg = &r.segments[s];
            let target = seg.point_from(graph, from, &eps);
            d.add_at(r.nodes[from].clone(), -S::one());
            d.add_at(target.clone(), S::one());
            if let GraphPoint::Edge { edge, pos } = target {
                extra.push((edge, pos, eps.clone()));
            }
        }
        let step = r.function(graph, &values, extra, zero_slopes.clone());
        f = f.add(graph, &step)?.simplified(graph);
    }
    Err(Error::Internal("burning did not terminate".into()))
}

/// Dhar's burning: a node catches fire once more burning segments reach it
/// than it holds chips.
fn burnt_nodes<S: Scalar>(r: &Refinement<S>, d: &GraphDivisor<S>, q: usize) -> Vec<bool> {
    let n = r.len();
    let chips: Vec<S> = r.nodes.iter().map(|p| d.coeff(p)).collect();
    let mut burnt = vec![false; n];
    let mut fires = vec![0u64; n];
    let mut queue = VecDeque::from([q]);
    burnt[q] = true;
    while let Some(v) = queue.pop_front() {
        for &(_, w) in &r.adj[v] {
            if burnt[w] {
                continue;
            }
            fires[w] += 1;
            if S::from_uint(fires[w]) > chips[w] {
                burnt[w] = true;
                queue.push_back(w);
            }
        }
    }
    burnt
}

/// Whether `d` is `q`-reduced, checked by brute force over every closed set
/// of the lattice subdivision at `supp(d) + q` that avoids `q`: such a set
/// could fire legally iff each of its nodes holds at least as many chips as
/// it has segments leaving the set.
///
/// Exponential in the number of lattice nodes; meant for small test graphs.
pub fn is_reduced_brute_force<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    d: &GraphDivisor<S>,
    q: &GraphPoint<S>,
    refine: u32,
) -> Result<bool> {
    let coarse = Refinement::new(graph, d.support().chain([q]))?;
    let fine_unit = coarse.unit() / S::from_uint(1u64 << refine);
    let mut cuts: Vec<GraphPoint<S>> = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        let mut pos = fine_unit.clone();
        while pos < edge.length {
            cuts.push(GraphPoint::Edge {
                edge: e,
                pos: pos.clone(),
            });
            pos = pos + fine_unit.clone();
        }
    }
    let h = Refinement::new(graph, cuts.iter())?;
    let root = h.node(q).expect("q is a lattice node");
    let chips: Vec<S> = h.nodes.iter().map(|p| d.coeff(p)).collect();
    if chips
        .iter()
        .enumerate()
        .any(|(i, c)| i != root && c.is_negative())
    {
        return Ok(false);
    }
    let others: Vec<usize> = (0..h.len()).filter(|&i| i != root).collect();
    assert!(
        others.len() <= 20,
        "lattice too large for the brute-force check"
    );
    let mut in_set = vec![false; h.len()];
    for mask in 1u64..(1 << others.len()) {
        for (i, &v) in others.iter().enumerate() {
            in_set[v] = mask >> i & 1 == 1;
        }
        let legal = others.iter().filter(|&&x| in_set[x]).all(|&x| {
            let out = h.adj[x].iter().filter(|&&(_, w)| !in_set[w]).count();
            chips[x] >= S::from_uint(out as u64)
        });
        if legal {
            return Ok(false);
        }
    }
    Ok(true)
}
