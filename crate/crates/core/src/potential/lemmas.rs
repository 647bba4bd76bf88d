//! Machine-checked hypotheses and conclusions of the two min-locus lemmas.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::potential::cycles::{fundamental_cycle, is_spanning_tree, maximal_bridge_chains};
use crate::potential::divisor::GraphDivisor;
use crate::potential::laplacian::{canonical_divisor, div};
use crate::potential::locus::{min_locus, SubgraphLocus};
use crate::potential::plfunction::PlFunction;
use crate::scalar::Scalar;

/// Outcome of a lemma check. The conclusion is only evaluated when every
/// hypothesis holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport<S> {
    pub hypotheses: Vec<(String, bool)>,
    pub locus: Option<SubgraphLocus<S>>,
    pub expected: Option<SubgraphLocus<S>>,
}

impl<S: Scalar> LemmaReport<S> {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|(_, ok)| *ok)
    }

    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }

    /// `Some(min locus == expected locus)` when the hypotheses hold.
    pub fn conclusion(&self) -> Option<bool> {
        match (&self.locus, &self.expected) {
            (Some(l), Some(e)) => Some(l == e),
            _ => None,
        }
    }

    pub fn passed(&self) -> bool {
        self.hypotheses_hold() && self.conclusion() == Some(true)
    }
}

fn require_principal<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    d: &GraphDivisor<S>,
    f: &PlFunction<S>,
    m: u64,
) -> Result<()> {
    d.validate(graph)?;
    let k = canonical_divisor(graph, m)?;
    if div(graph, f)? != d.minus(&k) {
        let which = if m == 1 { "K" } else { "2K" };
        return Err(Error::Precondition(format!(
            "div(f) differs from D - {which}"
        )));
    }
    Ok(())
}

fn meets_interior<S>(d: &GraphDivisor<S>, e: usize) -> bool
where
    S: Scalar,
{
    d.iter()
        .any(|(p, c)| c.is_positive() && matches!(p, GraphPoint::Edge { edge, .. } if *edge == e))
}

/// Checks: if `f` has integral slopes, `T` is a spanning tree, `e` is
/// outside it, `D` is effective with `D - K = div(f)`, and `D` has a point inside every edge outside
/// `T + e`, then the minimum locus of `f` is the cycle of `T + e`.
pub fn check_min_locus_lemma<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    tree: &BTreeSet<usize>,
    e: usize,
    d: &GraphDivisor<S>,
    f: &PlFunction<S>,
) -> Result<LemmaReport<S>> {
    graph.edge(e)?;
    require_principal(graph, d, f, 1)?;
    let spanning = is_spanning_tree(graph, tree);
    let outside = !tree.contains(&e);
    let support = (0..graph.num_edges())
        .filter(|&x| x != e && !tree.contains(&x))
        .all(|x| meets_interior(d, x));
    let hypotheses = vec![
        (
            "integral-slopes".to_string(),
            f.is_integral(graph, graph.metric()),
        ),
        ("spanning-tree".to_string(), spanning),
        ("edge-outside-tree".to_string(), outside),
        ("effective".to_string(), d.is_effective()),
        ("support".to_string(), support),
    ];
    let mut report = LemmaReport {
        hypotheses,
        locus: None,
        expected: None,
    };
    if report.hypotheses_hold() {
        report.locus = Some(min_locus(graph, f)?);
        report.expected = Some(fundamental_cycle(graph, tree, e)?);
    }
    Ok(report)
}

/// Checks: if `f` has integral slopes, the graph has no 1-valent vertices, `chain` is a maximal bridge
/// chain with ends `v1, v2`, `D` is effective with `D - 2K = div(f)`, `D` has
/// a point inside every edge outside `T`, and `D >= K - v1 - v2`, then the
/// minimum locus of `f` is the chain.
pub fn check_bridge_lemma<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    chain: &[usize],
    tree: &BTreeSet<usize>,
    d: &GraphDivisor<S>,
    f: &PlFunction<S>,
) -> Result<LemmaReport<S>> {
    require_principal(graph, d, f, 2)?;
    let no_leaves = (0..graph.num_vertices()).all(|v| graph.compact_valency(v) != 1);
    let wanted: BTreeSet<usize> = chain.iter().copied().collect();
    let found = maximal_bridge_chains(graph)
        .into_iter()
        .find(|c| c.edges.iter().copied().collect::<BTreeSet<_>>() == wanted);
    let spanning = is_spanning_tree(graph, tree);
    let support = (0..graph.num_edges())
        .filter(|x| !tree.contains(x))
        .all(|x| meets_interior(d, x));
    let bound = match &found {
        Some(c) => {
            let (v1, v2) = c.ends();
            let k = canonical_divisor(graph, 1)?;
            let floor = k
                .minus(&GraphDivisor::vertex(v1, 1))
                .minus(&GraphDivisor::vertex(v2, 1));
            d.dominates(&floor)
        }
        None => false,
    };
    let hypotheses = vec![
        (
            "integral-slopes".to_string(),
            f.is_integral(graph, graph.metric()),
        ),
        ("no-leaves".to_string(), no_leaves),
        ("maximal-bridge-chain".to_string(), found.is_some()),
        ("spanning-tree".to_string(), spanning),
        ("effective".to_string(), d.is_effective()),
        ("support".to_string(), support),
        ("canonical-bound".to_string(), bound),
    ];
    let mut report = LemmaReport {
        hypotheses,
        locus: None,
        expected: None,
    };
    if report.hypotheses_hold() {
        report.locus = Some(min_locus(graph, f)?);
        report.expected = Some(SubgraphLocus::from_edges(graph, chain.iter().copied())?);
    }
    Ok(report)
}
