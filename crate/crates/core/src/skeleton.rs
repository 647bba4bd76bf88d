//! Tails, combinatorial and essential skeleta, the locus of canonical forms on
//! semistable graphs, and explicit witnesses for it.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{graph_genus, GraphPoint, WeightedDualGraph};
use crate::potential::cycles::{
    bridges, maximal_bridge_chains, spanning_tree, spanning_tree_excluding,
};
use crate::potential::divisor::GraphDivisor;
use crate::potential::laplacian::{canonical_divisor, model_genus};
use crate::potential::lemmas::{check_bridge_lemma, check_min_locus_lemma, LemmaReport};
use crate::potential::locus::SubgraphLocus;
use crate::potential::plfunction::PlFunction;
use crate::potential::reduce::reduce_divisor;
use crate::scalar::Scalar;

/// All maximal tails, each listed from its starting vertex `v0` to its
/// 1-valent end. Rays are ignored.
pub fn find_maximal_tails<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<Vec<Vec<usize>>> {
    graph.require_loop_free()?;
    let rational = |v: usize| graph.vertex(v).genus == 0;
    let mut tails = Vec::new();
    for leaf in 0..graph.num_vertices() {
        if graph.compact_valency(leaf) != 1 || !rational(leaf) {
            continue;
        }
        let mut chain = vec![leaf];
        let mut came = graph.incident(leaf)[0];
        let mut v = graph.edges()[came].other(leaf);
        while graph.compact_valency(v) == 2 && rational(v) {
            chain.push(v);
            came = graph
                .incident(v)
                .into_iter()
                .find(|&e| e != came)
                .expect("valency two");
            v = graph.edges()[came].other(v);
        }
        if graph.compact_valency(v) >= 3 || !rational(v) {
            chain.push(v);
            chain.reverse();
            tails.push(chain);
        }
    }
    Ok(tails)
}

fn require_positive_genus<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<()> {
    if !model_genus(graph)?.is_positive() {
        return Err(Error::Precondition(
            "total genus is 0; every component would be inessential".into(),
        ));
    }
    Ok(())
}

/// Contracts every maximal tail of the input to its starting vertex, once.
/// The result has no rays.
pub fn combinatorial_skeleton<S: Scalar>(
    graph: &WeightedDualGraph<S>,
) -> Result<WeightedDualGraph<S>> {
    require_positive_genus(graph)?;
    let mut keep = vec![true; graph.num_vertices()];
    for tail in find_maximal_tails(graph)? {
        for &v in &tail[1..] {
            keep[v] = false;
        }
    }
    graph.without_rays().induced(&keep)
}

/// Essential skeleton of the curve, given the graph of its minimal
/// snc-model. Minimality is not checked; see [`minimality_lint`].
pub fn essential_skeleton<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<WeightedDualGraph<S>> {
    let sk = combinatorial_skeleton(graph)?;
    if graph.is_reduced() && find_maximal_tails(graph)?.is_empty() && sk != graph.without_rays() {
        return Err(Error::Internal(
            "a reduced graph without tails must be its own skeleton".into(),
        ));
    }
    Ok(sk)
}

/// Vertices that look like contractible rational curves of self-intersection
/// `-1`: genus 0, at most two neighbours, and multiplicity equal to the sum
/// over incident edges of the neighbouring multiplicities. Their presence
/// suggests the model is not minimal.
pub fn minimality_lint<S: Scalar>(graph: &WeightedDualGraph<S>) -> Vec<String> {
    let adj = graph.adjacency();
    (0..graph.num_vertices())
        .filter(|&v| {
            let label = graph.vertex(v);
            let around: u64 = adj[v]
                .iter()
                .map(|&(_, w)| graph.vertex(w).multiplicity)
                .sum();
            label.genus == 0 && adj[v].len() <= 2 && around == label.multiplicity
        })
        .map(|v| {
            format!(
                "vertex `{}` looks like an exceptional curve; the model may not be minimal",
                graph.vertex(v).id
            )
        })
        .collect()
}

fn require_semistable_shape<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<()> {
    graph.require_reduced()?;
    graph.require_loop_free()?;
    require_positive_genus(graph)?;
    if let Some(v) = (0..graph.num_vertices())
        .find(|&v| graph.compact_valency(v) == 1 && graph.vertex(v).genus == 0)
    {
        return Err(Error::Precondition(format!(
            "vertex `{}` is a rational leaf; the model is not minimal",
            graph.vertex(v).id
        )));
    }
    Ok(())
}

/// Union of the closed non-bridge edges and the vertices of positive genus.
pub fn canonical_form_locus<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<SubgraphLocus<S>> {
    require_semistable_shape(graph)?;
    let br = bridges(graph);
    let mut locus = SubgraphLocus::from_vertices(
        (0..graph.num_vertices()).filter(|&v| graph.vertex(v).genus > 0),
    );
    for e in (0..graph.num_edges()).filter(|e| !br.contains(e)) {
        locus.insert_edge(graph, e)?;
    }
    Ok(locus)
}

/// An explicit `f` with `div(f) = D - mK` and its minimum locus, together
/// with the lemma check that predicts the locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<S> {
    pub m: u64,
    pub tree: BTreeSet<usize>,
    pub divisor: GraphDivisor<S>,
    pub function: PlFunction<S>,
    pub locus: SubgraphLocus<S>,
    pub report: LemmaReport<S>,
}

fn require_maximally_degenerate<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<()> {
    graph.require_reduced()?;
    graph.require_loop_free()?;
    if !graph.rays().is_empty() {
        return Err(Error::Precondition(
            "witnesses are built on graphs without rays".into(),
        ));
    }
    if let Some(v) = graph.vertices().iter().find(|v| v.genus > 0) {
        return Err(Error::Precondition(format!(
            "vertex `{}` has positive genus",
            v.id
        )));
    }
    Ok(())
}

fn midpoints<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    edges: impl Iterator<Item = usize>,
) -> GraphDivisor<S> {
    edges
        .map(|e| {
            let half = graph.edges()[e].length.clone() / S::from_int(2);
            (
                graph.edge_point(e, half).expect("midpoint is interior"),
                S::one(),
            )
        })
        .collect()
}

/// `D = E' + D0` where `E'` is the reduced form of `mK - D0`; then
/// `div(f) = D - mK` for the `f` of the reduction.
fn complete<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    m: u64,
    d0: &GraphDivisor<S>,
    q: usize,
) -> Result<(GraphDivisor<S>, PlFunction<S>)> {
    let target = canonical_divisor(graph, m)?.minus(d0);
    let (reduced, f) = reduce_divisor(graph, &target, &GraphPoint::Vertex(q))?;
    if !reduced.is_effective() {
        return Err(Error::Internal("no effective representative found".into()));
    }
    Ok((reduced.plus(d0), f))
}

fn finish<S: Scalar>(
    m: u64,
    tree: BTreeSet<usize>,
    divisor: GraphDivisor<S>,
    function: PlFunction<S>,
    report: LemmaReport<S>,
) -> Result<Witness<S>> {
    if !report.hypotheses_hold() {
        return Err(Error::Internal(format!(
            "witness violates hypotheses: {}",
            report.failed_hypotheses().join(", ")
        )));
    }
    if report.conclusion() != Some(true) {
        return Err(Error::Internal(
            "minimum locus differs from the predicted one".into(),
        ));
    }
    let locus = report.locus.clone().expect("hypotheses hold");
    Ok(Witness {
        m,
        tree,
        divisor,
        function,
        locus,
        report,
    })
}

/// A canonical divisor class representative whose `f` has minimum locus the
/// fundamental cycle of `e` with respect to a spanning tree avoiding `e`.
pub fn witness_cycle<S: Scalar>(graph: &WeightedDualGraph<S>, e: usize) -> Result<Witness<S>> {
    graph.edge(e)?;
    if bridges(graph).contains(&e) {
        return Err(Error::Precondition(format!("edge {e} is a bridge")));
    }
    let tree = spanning_tree_excluding(graph, &BTreeSet::from([e]))?;
    witness_cycle_with_tree(graph, &tree, e)
}

/// As [`witness_cycle`] with a given spanning tree.
pub fn witness_cycle_with_tree<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    tree: &BTreeSet<usize>,
    e: usize,
) -> Result<Witness<S>> {
    require_maximally_degenerate(graph)?;
    graph.edge(e)?;
    if tree.contains(&e) {
        return Err(Error::Precondition(format!(
            "edge {e} belongs to the spanning tree"
        )));
    }
    let d0 = midpoints(
        graph,
        (0..graph.num_edges()).filter(|x| *x != e && !tree.contains(x)),
    );
    let (d, f) = complete(graph, 1, &d0, graph.edges()[e].a)?;
    let report = check_min_locus_lemma(graph, tree, e, &d, &f)?;
    finish(1, tree.clone(), d, f, report)
}

/// A bicanonical divisor class representative whose `f` has minimum locus
/// exactly the maximal bridge chain `chain`.
pub fn witness_bridge_chain<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    chain: &[usize],
) -> Result<Witness<S>> {
    require_maximally_degenerate(graph)?;
    if graph_genus(graph)? <= 1 {
        return Err(Error::Precondition(
            "genus at most one: there are no bridge chains to realize".into(),
        ));
    }
    if (0..graph.num_vertices()).any(|v| graph.compact_valency(v) == 1) {
        return Err(Error::Precondition(
            "the graph has 1-valent vertices".into(),
        ));
    }
    let wanted: BTreeSet<usize> = chain.iter().copied().collect();
    let found = maximal_bridge_chains(graph)
        .into_iter()
        .find(|c| c.edges.iter().copied().collect::<BTreeSet<_>>() == wanted)
        .ok_or_else(|| Error::Precondition("not a maximal bridge chain".into()))?;
    let (v1, v2) = found.ends();
    let tree = spanning_tree(graph);
    let d0 = midpoints(graph, (0..graph.num_edges()).filter(|x| !tree.contains(x)))
        .plus(&canonical_divisor(graph, 1)?)
        .minus(&GraphDivisor::vertex(v1, 1))
        .minus(&GraphDivisor::vertex(v2, 1));
    let (d, f) = complete(graph, 2, &d0, v1)?;
    let report = check_bridge_lemma(graph, chain, &tree, &d, &f)?;
    finish(2, tree, d, f, report)
}

/// Union of the loci of [`witness_cycle`] over all non-bridge edges, computed
/// on the graph with every genus set to 0, together with the vertices of
/// positive genus. Agrees with [`canonical_form_locus`].
pub fn witness_union_locus<S: Scalar>(graph: &WeightedDualGraph<S>) -> Result<SubgraphLocus<S>> {
    require_semistable_shape(graph)?;
    let rational = (0..graph.num_vertices()).fold(graph.without_rays(), |g, v| g.with_genus(v, 0));
    let br = bridges(graph);
    let mut locus = SubgraphLocus::from_vertices(
        (0..graph.num_vertices()).filter(|&v| graph.vertex(v).genus > 0),
    );
    for e in (0..graph.num_edges()).filter(|e| !br.contains(e)) {
        let w = witness_cycle(&rational, e)?;
        locus = locus.union(graph, &w.locus)?;
    }
    Ok(locus)
}
