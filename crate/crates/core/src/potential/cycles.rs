//! Bridges, spanning trees, fundamental cycles and bridge chains.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::potential::locus::SubgraphLocus;
use crate::scalar::Scalar;

/// Edges whose removal disconnects the graph, by an iterative low-link
/// traversal. Parallel edges are told apart by index, so a doubled edge is
/// never a bridge; loops never are.
pub fn bridges<S: Scalar>(graph: &WeightedDualGraph<S>) -> BTreeSet<usize> {
    let n = graph.num_vertices();
    let adj = graph.adjacency();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut out = BTreeSet::new();
    let mut counter = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        // (vertex, edge used to enter it, next adjacency index)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (e, w) = adj[v][*next];
                *next += 1;
                if Some(e) == via || graph.edges()[e].is_loop() {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        out.insert(e);
                    }
                }
            }
        }
    }
    out
}

fn connected_with<S: Scalar>(graph: &WeightedDualGraph<S>, keep: impl Fn(usize) -> bool) -> bool {
    let mut seen = vec![false; graph.num_vertices()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let adj = graph.adjacency();
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[v] {
            if keep(e) && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Bridges by deleting each edge and testing connectivity.
pub fn bridges_brute_force<S: Scalar>(graph: &WeightedDualGraph<S>) -> BTreeSet<usize> {
    (0..graph.num_edges())
        .filter(|&e| !connected_with(graph, |f| f != e))
        .collect()
}

/// A breadth-first spanning tree avoiding the `excluded` edges.
pub fn spanning_tree_excluding<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    excluded: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>> {
    let adj = graph.adjacency();
    let mut seen = vec![false; graph.num_vertices()];
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[v] {
            if !excluded.contains(&e) && !seen[w] {
                seen[w] = true;
                tree.insert(e);
                queue.push_back(w);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(tree)
    } else {
        Err(Error::Precondition(
            "the excluded edges disconnect the graph; no spanning tree avoids them".into(),
        ))
    }
}

pub fn spanning_tree<S: Scalar>(graph: &WeightedDualGraph<S>) -> BTreeSet<usize> {
    spanning_tree_excluding(graph, &BTreeSet::new()).expect("graphs are connected")
}

pub fn is_spanning_tree<S: Scalar>(graph: &WeightedDualGraph<S>, tree: &BTreeSet<usize>) -> bool {
    tree.len() + 1 == graph.num_vertices()
        && tree.iter().all(|&e| e < graph.num_edges())
        && connected_with(graph, |e| tree.contains(&e))
}

/// Every spanning tree, by testing all edge subsets of the right size.
pub fn all_spanning_trees<S: Scalar>(graph: &WeightedDualGraph<S>) -> Vec<BTreeSet<usize>> {
    let k = graph.num_vertices() - 1;
    (0..graph.num_edges())
        .combinations(k)
        .map(|c| c.into_iter().collect::<BTreeSet<_>>())
        .filter(|t| is_spanning_tree(graph, t))
        .collect()
}

/// The unique cycle in `tree + e`, as a closed locus of whole edges.
pub fn fundamental_cycle<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    tree: &BTreeSet<usize>,
    e: usize,
) -> Result<SubgraphLocus<S>> {
    let edge = graph.edge(e)?;
    if !is_spanning_tree(graph, tree) {
        return Err(Error::Precondition(
            "the given edge set is not a spanning tree".into(),
        ));
    }
    if tree.contains(&e) {
        return Err(Error::Precondition(format!(
            "edge {e} belongs to the spanning tree"
        )));
    }
    let path = tree_path(graph, tree, edge.a, edge.b);
    SubgraphLocus::from_edges(graph, path.into_iter().chain([e]))
}

/// Edges of the unique path from `from` to `to` inside `tree`.
pub fn tree_path<S: Scalar>(
    graph: &WeightedDualGraph<S>,
    tree: &BTreeSet<usize>,
    from: usize,
    to: usize,
) -> Vec<usize> {
    let adj = graph.adjacency();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; graph.num_vertices()];
    let mut seen = vec![false; graph.num_vertices()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[v] {
            if tree.contains(&e) && !seen[w] {
                seen[w] = true;
                parent[w] = Some((e, v));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((e, p)) = parent[cur] {
        path.push(e);
        cur = p;
    }
    path
}

/// A maximal chain of bridges: consecutive bridge edges whose inner vertices
/// have valency two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BridgeChain {
    /// Edges in order from `ends.0` to `ends.1`.
    pub edges: Vec<usize>,
    /// Vertices in order, including both ends.
    pub vertices: Vec<usize>,
}

impl BridgeChain {
    pub fn ends(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

/// All maximal bridge chains. A chain stops at a vertex whose compact
/// valency is not two or whose genus is positive.
pub fn maximal_bridge_chains<S: Scalar>(graph: &WeightedDualGraph<S>) -> Vec<BridgeChain> {
    let br = bridges(graph);
    let inner = |v: usize| graph.compact_valency(v) == 2 && graph.vertex(v).genus == 0;
    let mut used = BTreeSet::new();
    let mut chains = Vec::new();
    for &start in &br {
        if used.contains(&start) {
            continue;
        }
        let edge = &graph.edges()[start];
        // Walk outwards in both directions through inner vertices.
        let walk = |from: usize, mut v: usize| -> (Vec<usize>, Vec<usize>) {
            let mut edges = Vec::new();
            let mut verts = vec![v];
            let mut came = from;
            while inner(v) {
                let next = graph
                    .incident(v)
                    .into_iter()
                    .find(|&e| e != came)
                    .expect("valency two");
                if !br.contains(&next) {
                    break;
                }
                edges.push(next);
                v = graph.edges()[next].other(v);
                verts.push(v);
                came = next;
            }
            (edges, verts)
        };
        let (left_e, left_v) = walk(start, edge.a);
        let (right_e, right_v) = walk(start, edge.b);
        let mut edges: Vec<usize> = left_e.into_iter().rev().collect();
        edges.push(start);
        edges.extend(right_e);
        let mut vertices: Vec<usize> = left_v.into_iter().rev().collect();
        vertices.extend(right_v);
        used.extend(edges.iter().copied());
        chains.push(BridgeChain { edges, vertices });
    }
    chains
}
