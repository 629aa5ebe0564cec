//! Weighted graphs, cuts and partially fixed cut instances.
//!
//! Weights are exact integers. Decimal inputs are scaled by a single power of
//! ten that is recorded on the graph, so cut values of the scaled graph are the
//! input cut values times `10^scale`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Exact edge weight. Inputs are bounded by [`MAX_TOTAL_WEIGHT`] so that every
/// derived penalty fits comfortably.
pub type Weight = i128;
pub type NodeId = usize;
pub type EdgeId = usize;

/// Upper bound on `Σ|c_e|` accepted at ingestion (2^80).
pub const MAX_TOTAL_WEIGHT: Weight = 1 << 80;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed weight `{0}`")]
    MalformedWeight(String),
    #[error("node id {node} out of range (graph has {count} nodes)")]
    NodeOutOfRange { node: NodeId, count: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(NodeId, NodeId),
    #[error("edge id {0} does not exist")]
    NoSuchEdge(EdgeId),
    #[error("total absolute weight exceeds 2^80")]
    WeightOverflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: Weight,
}

impl Edge {
    pub fn new(u: NodeId, v: NodeId, weight: Weight) -> Self {
        Edge { u, v, weight }
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: NodeId) -> NodeId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn low(&self) -> NodeId {
        self.u.min(self.v)
    }

    pub fn high(&self) -> NodeId {
        self.u.max(self.v)
    }

    pub fn touches(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }
}

/// A simple undirected graph with exact integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    scale: u32,
}

impl WeightedGraph {
    /// Builds a graph, rejecting loops, parallel edges and dangling endpoints.
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); node_count];
        let mut seen = HashMap::with_capacity(edges.len());
        for (id, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= node_count {
                    return Err(GraphError::NodeOutOfRange { node: x, count: node_count });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            if seen.insert((e.low(), e.high()), id).is_some() {
                return Err(GraphError::ParallelEdge(e.low(), e.high()));
            }
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        Ok(WeightedGraph { edges, adjacency, scale: 0 })
    }

    pub fn with_scale(mut self, scale: u32) -> Self {
        self.scale = scale;
        self
    }

    /// Power of ten the input weights were multiplied by.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn find_edge(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    pub fn total_abs_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.weight.abs()).sum()
    }

    pub fn negative_weight_sum(&self) -> Weight {
        self.edges.iter().map(|e| e.weight).filter(|&w| w < 0).sum()
    }

    /// Endpoint pairs in edge-id order.
    pub fn endpoints(&self) -> Vec<(NodeId, NodeId)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// Same topology, new weights (indexed by edge id).
    pub fn reweighted(&self, weights: impl Fn(EdgeId, &Edge) -> Weight) -> Self {
        let mut g = self.clone();
        for (id, e) in g.edges.iter_mut().enumerate() {
            e.weight = weights(id, &self.edges[id]);
        }
        g
    }

    /// Connected component label per node, labels dense from 0.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }
}

/// A node bipartition. `side[v]` is true when `v ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub side: Vec<bool>,
    pub value: Weight,
}

impl Cut {
    pub fn from_sides(graph: &WeightedGraph, side: Vec<bool>) -> Self {
        let value = cut_value(graph, &side);
        Cut { side, value }
    }

    pub fn crosses(&self, e: &Edge) -> bool {
        self.side[e.u] != self.side[e.v]
    }

    pub fn cut_edges(&self, graph: &WeightedGraph) -> Vec<EdgeId> {
        graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| self.crosses(e))
            .map(|(id, _)| id)
            .collect()
    }

    pub fn complement(&self) -> Self {
        Cut { side: self.side.iter().map(|b| !b).collect(), value: self.value }
    }

    /// Complemented if needed so that node 0 lies in `S`.
    pub fn normalized(self) -> Self {
        match self.side.first() {
            Some(false) => self.complement(),
            _ => self,
        }
    }

    pub fn members(&self) -> Vec<NodeId> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }
}

/// `c(δ(S))` for the set given by `side`.
pub fn cut_value(graph: &WeightedGraph, side: &[bool]) -> Weight {
    graph
        .edges()
        .iter()
        .filter(|e| side[e.u] != side[e.v])
        .map(|e| e.weight)
        .sum()
}

/// A cut value that may be `−∞` for infeasible instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    NegInfinity,
    Finite(Weight),
}

impl Value {
    pub fn finite(self) -> Option<Weight> {
        match self {
            Value::Finite(w) => Some(w),
            Value::NegInfinity => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::NegInfinity => f.write_str("-inf"),
            Value::Finite(w) => write!(f, "{w}"),
        }
    }
}

/// A graph together with a set `F` of edges every feasible cut must contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFInstance {
    pub graph: WeightedGraph,
    pub fixed: BTreeSet<EdgeId>,
}

impl PFInstance {
    pub fn new(graph: WeightedGraph, fixed: BTreeSet<EdgeId>) -> Result<Self, GraphError> {
        if let Some(&bad) = fixed.iter().find(|&&e| e >= graph.edge_count()) {
            return Err(GraphError::NoSuchEdge(bad));
        }
        Ok(PFInstance { graph, fixed })
    }

    pub fn unfixed(graph: WeightedGraph) -> Self {
        PFInstance { graph, fixed: BTreeSet::new() }
    }
}

pub fn is_feasible_cut(inst: &PFInstance, side: &[bool]) -> bool {
    inst.fixed.iter().all(|&f| {
        let e = inst.graph.edge(f);
        side[e.u] != side[e.v]
    })
}

/// True iff `(V, F)` contains an odd cycle, i.e. no cut can contain all of `F`.
pub fn pf_infeasible(inst: &PFInstance) -> bool {
    let n = inst.graph.node_count();
    let mut fixed_adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &f in &inst.fixed {
        let e = inst.graph.edge(f);
        fixed_adj[e.u].push(e.v);
        fixed_adj[e.v].push(e.u);
    }
    let mut parity: Vec<Option<bool>> = vec![None; n];
    let mut stack = Vec::new();
    for s in 0..n {
        if parity[s].is_some() || fixed_adj[s].is_empty() {
            continue;
        }
        parity[s] = Some(false);
        stack.push(s);
        while let Some(x) = stack.pop() {
            let px = parity[x].unwrap();
            for &y in &fixed_adj[x] {
                match parity[y] {
                    None => {
                        parity[y] = Some(!px);
                        stack.push(y);
                    }
                    Some(py) if py == px => return true,
                    Some(_) => {}
                }
            }
        }
    }
    false
}

/// Parses `-12.375` style decimals into `(mantissa, decimals)`.
pub fn parse_decimal(text: &str) -> Result<(Weight, u32), GraphError> {
    let bad = || GraphError::MalformedWeight(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = digits.trim_start_matches('0');
    if digits.len() > 30 {
        return Err(GraphError::WeightOverflow);
    }
    let mantissa: Weight = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let decimals = u32::try_from(frac_part.len()).map_err(|_| bad())?;
    Ok((if negative { -mantissa } else { mantissa }, decimals))
}

/// Rescales a parsed decimal to `scale` digits after the point.
pub fn rescale(mantissa: Weight, decimals: u32, scale: u32) -> Result<Weight, GraphError> {
    debug_assert!(decimals <= scale);
    let factor = 10i128
        .checked_pow(scale - decimals)
        .ok_or(GraphError::WeightOverflow)?;
    mantissa.checked_mul(factor).ok_or(GraphError::WeightOverflow)
}

/// An edge as read from input, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub node_count: usize,
    pub edges: Vec<RawEdge>,
}

/// Result of normalization with the raw-edge to edge-id correspondence.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub graph: WeightedGraph,
    /// `None` for dropped self-loops; merged parallel edges share an id.
    pub edge_map: Vec<Option<EdgeId>>,
}

/// Smallest power of ten making every weight integral.
pub fn common_scale<'a>(weights: impl IntoIterator<Item = &'a str>) -> Result<u32, GraphError> {
    let mut scale = 0;
    for w in weights {
        scale = scale.max(parse_decimal(w)?.1);
    }
    Ok(scale)
}

/// Drops loops, merges parallel edges and scales decimal weights to integers.
pub fn normalize_graph(raw: &RawGraph) -> Result<WeightedGraph, GraphError> {
    let scale = common_scale(raw.edges.iter().map(|e| e.weight.as_str()))?;
    Ok(normalize_at_scale(raw, scale)?.graph)
}

pub fn normalize_at_scale(raw: &RawGraph, scale: u32) -> Result<Normalized, GraphError> {
    let mut integral = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        let (m, d) = parse_decimal(&e.weight)?;
        if d > scale {
            return Err(GraphError::MalformedWeight(e.weight.clone()));
        }
        integral.push((e.u, e.v, rescale(m, d, scale)?));
    }
    let mut normalized = normalize_edges(raw.node_count, &integral)?;
    normalized.graph.scale = scale;
    Ok(normalized)
}

/// Integer-weight normalization: loops dropped, parallel edges summed.
pub fn normalize_edges(
    node_count: usize,
    edges: &[(NodeId, NodeId, Weight)],
) -> Result<Normalized, GraphError> {
    let mut index: HashMap<(NodeId, NodeId), EdgeId> = HashMap::new();
    let mut merged: Vec<Edge> = Vec::new();
    let mut edge_map = Vec::with_capacity(edges.len());
    let mut total: Weight = 0;
    for &(u, v, w) in edges {
        for x in [u, v] {
            if x >= node_count {
                return Err(GraphError::NodeOutOfRange { node: x, count: node_count });
            }
        }
        total = total.checked_add(w.checked_abs().ok_or(GraphError::WeightOverflow)?)
            .ok_or(GraphError::WeightOverflow)?;
        if total > MAX_TOTAL_WEIGHT {
            return Err(GraphError::WeightOverflow);
        }
        if u == v {
            edge_map.push(None);
            continue;
        }
        let key = (u.min(v), u.max(v));
        let id = *index.entry(key).or_insert_with(|| {
            merged.push(Edge::new(u, v, 0));
            merged.len() - 1
        });
        merged[id].weight += w;
        edge_map.push(Some(id));
    }
    let graph = WeightedGraph::new(node_count, merged)?;
    Ok(Normalized { graph, edge_map })
}
