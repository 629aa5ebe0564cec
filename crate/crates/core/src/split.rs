//! Bisubdivision, node identification and the crossing split, with the node
//! correspondences needed to carry cuts back to the parent instance.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::crossing::{CrossingConfiguration, CrossingId};
use crate::graph::{is_feasible_cut, Cut, Edge, EdgeId, NodeId, PFInstance, WeightedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("edge {0} does not exist")]
    NoSuchEdge(EdgeId),
    #[error("node {node} is not an endpoint of edge {edge}")]
    NotAnEndpoint { edge: EdgeId, node: NodeId },
    #[error("node {0} does not exist")]
    NoSuchNode(NodeId),
    #[error("crossing {0} does not exist")]
    NoSuchCrossing(CrossingId),
    #[error("cannot identify node {0} with itself")]
    SameNode(NodeId),
    #[error("nodes {0} and {1} are adjacent")]
    Adjacent(NodeId, NodeId),
    #[error("nodes {0} and {1} share a neighbor")]
    CommonNeighbor(NodeId, NodeId),
    #[error("crossing {0} joins adjacent edges")]
    NotGood(CrossingId),
    #[error("cut violates a fixed edge of the child instance")]
    InfeasibleCut,
}

/// Where each parent node ended up in the child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeMap {
    pub parent_to_child: Vec<NodeId>,
    pub child_count: usize,
}

impl NodeMap {
    pub fn identity(n: usize) -> Self {
        NodeMap { parent_to_child: (0..n).collect(), child_count: n }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &NodeMap) -> NodeMap {
        NodeMap {
            parent_to_child: self.parent_to_child.iter().map(|&c| next.parent_to_child[c]).collect(),
            child_count: next.child_count,
        }
    }

    /// Pre-images of every child node; fresh nodes have none, merged nodes two.
    pub fn child_to_parent(&self) -> Vec<Vec<NodeId>> {
        let mut back = vec![Vec::new(); self.child_count];
        for (p, &c) in self.parent_to_child.iter().enumerate() {
            back[c].push(p);
        }
        back
    }

    pub fn fresh(&self) -> Vec<NodeId> {
        self.child_to_parent()
            .iter()
            .enumerate()
            .filter(|(_, pre)| pre.is_empty())
            .map(|(c, _)| c)
            .collect()
    }

    /// Sides of the parent nodes induced by a child bipartition.
    pub fn lift(&self, child_side: &[bool]) -> Vec<bool> {
        self.parent_to_child.iter().map(|&c| child_side[c]).collect()
    }
}

/// A PF instance together with a crossing configuration of its graph.
#[derive(Clone, Debug)]
pub struct Triplet {
    pub instance: PFInstance,
    pub config: CrossingConfiguration,
}

impl Triplet {
    pub fn new(instance: PFInstance, config: CrossingConfiguration) -> Self {
        Triplet { instance, config }
    }
}

/// Ids produced by [`bisubdivide`] of edge `vw` at `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bisubdivision {
    pub v_bar: NodeId,
    pub w_bar: NodeId,
    /// `v v̄`, reusing the id of `vw`.
    pub near: EdgeId,
    /// `v̄ w̄`.
    pub middle: EdgeId,
    /// `w̄ w`, carrying the original weight.
    pub far: EdgeId,
}

/// Replaces `vw` by the path `v v̄ w̄ w` with weights `0, 0, c_vw` and fixes the
/// first two edges. A fixed `vw` hands its status to `w̄ w`.
pub fn bisubdivide(
    inst: &PFInstance,
    edge: EdgeId,
    at: NodeId,
) -> Result<(PFInstance, NodeMap, Bisubdivision), SplitError> {
    let g = &inst.graph;
    if edge >= g.edge_count() {
        return Err(SplitError::NoSuchEdge(edge));
    }
    let e = *g.edge(edge);
    if !e.touches(at) {
        return Err(SplitError::NotAnEndpoint { edge, node: at });
    }
    let (v, w) = (at, e.other(at));
    let n = g.node_count();
    let m = g.edge_count();
    let ids = Bisubdivision { v_bar: n, w_bar: n + 1, near: edge, middle: m, far: m + 1 };
    let mut edges = g.edges().to_vec();
    edges[edge] = Edge::new(v, ids.v_bar, 0);
    edges.push(Edge::new(ids.v_bar, ids.w_bar, 0));
    edges.push(Edge::new(ids.w_bar, w, e.weight));
    let graph = WeightedGraph::new(n + 2, edges).expect("bisubdivision keeps the graph simple").with_scale(g.scale());
    let mut fixed = inst.fixed.clone();
    if fixed.contains(&edge) {
        fixed.insert(ids.far);
    }
    fixed.insert(ids.near);
    fixed.insert(ids.middle);
    let map = NodeMap { parent_to_child: (0..n).collect(), child_count: n + 2 };
    Ok((PFInstance { graph, fixed }, map, ids))
}

/// Merges `a` and `b`. The merged node keeps the smaller id, the larger id is
/// removed and later ids shift down by one. Edge ids do not change.
pub fn identify(inst: &PFInstance, a: NodeId, b: NodeId) -> Result<(PFInstance, NodeMap), SplitError> {
    let g = &inst.graph;
    let n = g.node_count();
    for x in [a, b] {
        if x >= n {
            return Err(SplitError::NoSuchNode(x));
        }
    }
    if a == b {
        return Err(SplitError::SameNode(a));
    }
    if g.find_edge(a, b).is_some() {
        return Err(SplitError::Adjacent(a, b));
    }
    let na: BTreeSet<NodeId> = g.neighbors(a).iter().map(|&(x, _)| x).collect();
    if g.neighbors(b).iter().any(|(x, _)| na.contains(x)) {
        return Err(SplitError::CommonNeighbor(a, b));
    }
    let (keep, gone) = (a.min(b), a.max(b));
    let parent_to_child: Vec<NodeId> = (0..n)
        .map(|x| match x.cmp(&gone) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => x - 1,
        })
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge::new(parent_to_child[e.u], parent_to_child[e.v], e.weight))
        .collect();
    let graph = WeightedGraph::new(n - 1, edges).expect("identification keeps the graph simple").with_scale(g.scale());
    let map = NodeMap { parent_to_child, child_count: n - 1 };
    Ok((PFInstance { graph, fixed: inst.fixed.clone() }, map))
}

/// Node and edge roles of a crossing split, in parent ids for `v, w, x, y`
/// and child ids for the fresh nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitRoles {
    pub crossing: CrossingId,
    pub vw: EdgeId,
    pub xy: EdgeId,
    pub v: NodeId,
    pub w: NodeId,
    pub x: NodeId,
    pub y: NodeId,
    pub v_bar: NodeId,
    pub w_bar: NodeId,
    pub y_bar: NodeId,
}

/// The two children of a crossing split: `same` puts `v` and `x` on one
/// side, `opposite` separates them.
#[derive(Clone, Debug)]
pub struct Split {
    pub roles: SplitRoles,
    pub same: Triplet,
    pub same_map: NodeMap,
    pub opposite: Triplet,
    pub opposite_map: NodeMap,
}

/// Splits the triplet at crossing `chi` between `vw` and `xy`.
///
/// `vw` is the edge with the lexicographically smaller endpoint pair, and each
/// edge is bisubdivided at its lower endpoint. `x̄` is then identified with
/// `v̄` (child `same`) or with `w̄` (child `opposite`). The crossings between
/// an endpoint `j` and `chi` move to the edge `j j̄`, keeping their order.
pub fn crossing_split(t: &Triplet, chi: CrossingId) -> Result<Split, SplitError> {
    let g = &t.instance.graph;
    let [e1, e2] = t.config.edges_of(chi).ok_or(SplitError::NoSuchCrossing(chi))?;
    let key = |e: EdgeId| (g.edge(e).low(), g.edge(e).high());
    let (vw, xy) = if key(e1) <= key(e2) { (e1, e2) } else { (e2, e1) };
    let (v, w) = (g.edge(vw).low(), g.edge(vw).high());
    let (x, y) = (g.edge(xy).low(), g.edge(xy).high());
    if [v, w].contains(&x) || [v, w].contains(&y) {
        return Err(SplitError::NotGood(chi));
    }
    let (mid, _, b1) = bisubdivide(&t.instance, vw, v)?;
    let (both, _, b2) = bisubdivide(&mid, xy, x)?;
    let n = g.node_count();

    let split_order = |e: EdgeId| {
        let order = t.config.order(e);
        let pos = order.iter().position(|&c| c == chi).expect("crossing on its edge");
        let before = order[..pos].to_vec();
        let mut after = order[pos + 1..].to_vec();
        after.reverse();
        (before, after)
    };
    let (y_v, y_w) = split_order(vw);
    let (y_x, y_y) = split_order(xy);

    // the far segments get new ids; crossings there must follow
    let moved: Vec<(CrossingId, EdgeId, EdgeId)> = y_w
        .iter()
        .map(|&c| (c, vw, b1.far))
        .chain(y_y.iter().map(|&c| (c, xy, b2.far)))
        .collect();
    let crossings: Vec<(CrossingId, EdgeId, EdgeId)> = t
        .config
        .crossings()
        .filter(|&(c, _)| c != chi)
        .map(|(c, [a, b])| {
            let retarget = |e: EdgeId| {
                moved
                    .iter()
                    .find(|&&(mc, from, _)| mc == c && from == e)
                    .map_or(e, |&(_, _, to)| to)
            };
            (c, retarget(a), retarget(b))
        })
        .collect();
    let mut orders = t.config.orders().clone();
    for (e, list) in [(vw, y_v), (b1.far, y_w), (xy, y_x), (b2.far, y_y)] {
        if list.is_empty() {
            orders.remove(&e);
        } else {
            orders.insert(e, list);
        }
    }
    let config = CrossingConfiguration::new(crossings, orders);

    let child = |target: NodeId| -> Result<(Triplet, NodeMap), SplitError> {
        let (inst, map) = identify(&both, b2.v_bar, target)?;
        let full = NodeMap { parent_to_child: (0..n).collect(), child_count: n + 4 }.then(&map);
        debug_assert_eq!(config.check(&inst.graph), Ok(()));
        Ok((Triplet::new(inst, config.clone()), full))
    };
    let (same, same_map) = child(b1.v_bar)?;
    let (opposite, opposite_map) = child(b1.w_bar)?;
    let roles = SplitRoles {
        crossing: chi,
        vw,
        xy,
        v,
        w,
        x,
        y,
        v_bar: b1.v_bar,
        w_bar: b1.w_bar,
        y_bar: n + 2,
    };
    Ok(Split { roles, same, same_map, opposite, opposite_map })
}

/// Carries a feasible cut of `child` back to `parent` through `map`.
pub fn lift_cut(parent: &PFInstance, child: &PFInstance, cut: &Cut, map: &NodeMap) -> Result<Cut, SplitError> {
    if !is_feasible_cut(child, &cut.side) {
        return Err(SplitError::InfeasibleCut);
    }
    Ok(Cut::from_sides(&parent.graph, map.lift(&cut.side)))
}
