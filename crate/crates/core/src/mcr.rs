//! Maximum cut through a realization `H` of `G`: a graph of maximum degree 3
//! from which `G` is recovered by contracting marked split edges.
//!
//! Split edges get the weight `N = −3·Σ|c|`, so no optimal cut of `H` uses
//! one and the cut maps back onto `G` node by node.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::crossing::{CrossingConfiguration, CrossingId};
use crate::graph::{Cut, Edge, EdgeId, NodeId, Value, Weight, WeightedGraph};
use crate::solver::{solve_with, SolveError, SolveResult, SolveStats, SolverOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub h: WeightedGraph,
    pub split_edges: BTreeSet<EdgeId>,
    /// Image in `G` of every `H` node.
    pub contraction: Vec<NodeId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("contraction map has {found} entries for {expected} nodes")]
    MapLength { expected: usize, found: usize },
    #[error("H node {node} maps to missing G node {image}")]
    ImageOutOfRange { node: NodeId, image: NodeId },
    #[error("G node {0} has no H node")]
    NotSurjective(NodeId),
    #[error("split edge {0} does not exist")]
    NoSuchSplitEdge(EdgeId),
    #[error("split edge {0} joins nodes with different images")]
    SplitAcrossNodes(EdgeId),
    #[error("split edges of G node {0} do not form a tree")]
    NotATree(NodeId),
    #[error("edge {0} of H contracts to a loop")]
    ContractsToLoop(EdgeId),
    #[error("edge {0} of H has no counterpart in G")]
    NoCounterpart(EdgeId),
    #[error("G edge {0} is realized {1} times")]
    EdgeMultiplicity(EdgeId, usize),
    #[error("edge {h_edge} of H has weight {found}, G edge {g_edge} has {expected}")]
    WeightMismatch { h_edge: EdgeId, g_edge: EdgeId, expected: Weight, found: Weight },
    #[error("H node {node} has degree {degree} > 3")]
    DegreeTooHigh { node: NodeId, degree: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McrError {
    #[error("invalid realization: {0}")]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("optimal cut of H uses split edge {0}")]
    SplitEdgeCut(EdgeId),
}

impl Realization {
    /// `H = G` without split edges.
    pub fn trivial(g: &WeightedGraph) -> Self {
        Realization { h: g.clone(), split_edges: BTreeSet::new(), contraction: (0..g.node_count()).collect() }
    }

    /// `G` edge realized by each non-split `H` edge.
    pub fn edge_map(&self, g: &WeightedGraph) -> HashMap<EdgeId, EdgeId> {
        self.h
            .edges()
            .iter()
            .enumerate()
            .filter(|(id, _)| !self.split_edges.contains(id))
            .filter_map(|(id, e)| g.find_edge(self.contraction[e.u], self.contraction[e.v]).map(|ge| (id, ge)))
            .collect()
    }
}

/// Checks that contracting the split edges of `H` gives `G` with matching
/// weights, that every `G` node is a tree of split edges, and that `H` has
/// maximum degree 3.
pub fn check_realization(g: &WeightedGraph, r: &Realization) -> Result<(), RealizationError> {
    let h = &r.h;
    if r.contraction.len() != h.node_count() {
        return Err(RealizationError::MapLength { expected: h.node_count(), found: r.contraction.len() });
    }
    let mut members = vec![0usize; g.node_count()];
    for (node, &image) in r.contraction.iter().enumerate() {
        if image >= g.node_count() {
            return Err(RealizationError::ImageOutOfRange { node, image });
        }
        members[image] += 1;
    }
    if let Some(v) = members.iter().position(|&c| c == 0) {
        return Err(RealizationError::NotSurjective(v));
    }
    // union-find over split edges; a tree has one fewer edge than nodes
    let mut parent: Vec<usize> = (0..h.node_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut split_count = vec![0usize; g.node_count()];
    for &s in &r.split_edges {
        if s >= h.edge_count() {
            return Err(RealizationError::NoSuchSplitEdge(s));
        }
        let e = h.edge(s);
        let image = r.contraction[e.u];
        if r.contraction[e.v] != image {
            return Err(RealizationError::SplitAcrossNodes(s));
        }
        split_count[image] += 1;
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a == b {
            return Err(RealizationError::NotATree(image));
        }
        parent[a] = b;
    }
    for v in 0..g.node_count() {
        if split_count[v] + 1 != members[v] {
            return Err(RealizationError::NotATree(v));
        }
    }
    let mut realized = vec![0usize; g.edge_count()];
    for (id, e) in h.edges().iter().enumerate() {
        if r.split_edges.contains(&id) {
            continue;
        }
        let (a, b) = (r.contraction[e.u], r.contraction[e.v]);
        if a == b {
            return Err(RealizationError::ContractsToLoop(id));
        }
        let ge = g.find_edge(a, b).ok_or(RealizationError::NoCounterpart(id))?;
        let expected = g.edge(ge).weight;
        if expected != e.weight {
            return Err(RealizationError::WeightMismatch { h_edge: id, g_edge: ge, expected, found: e.weight });
        }
        realized[ge] += 1;
    }
    if let Some((ge, &count)) = realized.iter().enumerate().find(|(_, &c)| c != 1) {
        return Err(RealizationError::EdgeMultiplicity(ge, count));
    }
    if let Some(node) = (0..h.node_count()).find(|&v| h.degree(v) > 3) {
        return Err(RealizationError::DegreeTooHigh { node, degree: h.degree(node) });
    }
    Ok(())
}

pub fn validate_realization(g: &WeightedGraph, r: &Realization) -> bool {
    check_realization(g, r).is_ok()
}

/// The split-edge weight `N = −3·Σ|c|` for `G`.
pub fn split_penalty(g: &WeightedGraph) -> Weight {
    -3 * g.total_abs_weight()
}

/// Moves the `moved` edges of `H` node `v` onto a new node joined to `v` by a
/// new split edge. The new node gets id `|V(H)|`, the split edge id `|E(H)|`.
/// Crossing orders of moved edges are reversed where their lower endpoint
/// changes. A valid drawing stays valid when the moved edges are consecutive
/// around `v`.
pub fn split_node(
    r: &Realization,
    config: &CrossingConfiguration,
    v: NodeId,
    moved: &[EdgeId],
) -> (Realization, CrossingConfiguration) {
    let h = &r.h;
    let fresh = h.node_count();
    let mut edges = h.edges().to_vec();
    let mut orders = config.orders().clone();
    for &id in moved {
        let e = edges[id];
        assert!(e.touches(v), "edge {id} is not incident to {v}");
        let u = e.other(v);
        edges[id] = Edge::new(fresh, u, e.weight);
        if v < u {
            if let Some(list) = orders.get_mut(&id) {
                list.reverse();
            }
        }
    }
    let split = edges.len();
    edges.push(Edge::new(v, fresh, 0));
    let h = WeightedGraph::new(fresh + 1, edges).expect("splitting keeps the graph simple").with_scale(h.scale());
    let mut split_edges = r.split_edges.clone();
    split_edges.insert(split);
    let mut contraction = r.contraction.clone();
    contraction.push(r.contraction[v]);
    let crossings: Vec<(CrossingId, EdgeId, EdgeId)> = config.crossings().map(|(c, [a, b])| (c, a, b)).collect();
    (Realization { h, split_edges, contraction }, CrossingConfiguration::new(crossings, orders))
}

/// Maximum cut of `G` computed on the realization `H` drawn with `config`.
pub fn solve_via_realization(
    g: &WeightedGraph,
    r: &Realization,
    config: &CrossingConfiguration,
    options: &SolverOptions,
) -> Result<SolveResult, McrError> {
    check_realization(g, r)?;
    if g.total_abs_weight() == 0 {
        let cut = Cut::from_sides(g, vec![false; g.node_count()]).normalized();
        return Ok(SolveResult { value: Value::Finite(0), witness: Some(cut), stats: SolveStats::default() });
    }
    let n = split_penalty(g);
    let penalized = r.h.reweighted(|id, e| if r.split_edges.contains(&id) { n } else { e.weight });
    let result = solve_with(&penalized, config, options)?;
    let h_cut = result.witness.as_ref().expect("a cut without fixed edges always exists");
    if let Some(&s) = r.split_edges.iter().find(|&&s| h_cut.crosses(penalized.edge(s))) {
        return Err(McrError::SplitEdgeCut(s));
    }
    let mut side = vec![false; g.node_count()];
    for (node, &image) in r.contraction.iter().enumerate() {
        side[image] = h_cut.side[node];
    }
    let cut = Cut::from_sides(g, side).normalized();
    debug_assert_eq!(Value::Finite(cut.value), result.value);
    Ok(SolveResult { value: Value::Finite(cut.value), witness: Some(cut), stats: result.stats })
}
