//! Crossing configurations: which edge pairs cross and in what order the
//! crossings occur along every crossed edge.
//!
//! Orders run from the lower-id endpoint of an edge to its higher-id endpoint.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::planarity::{planar_embedding, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingId(pub usize);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("crossing {crossing} references missing edge {edge}")]
    NoSuchEdge { crossing: CrossingId, edge: EdgeId },
    #[error("crossing {0} names the same edge twice")]
    SameEdge(CrossingId),
    #[error("edge {0} has crossings but no order")]
    MissingOrder(EdgeId),
    #[error("order of edge {edge} does not list exactly its crossings")]
    OrderMismatch { edge: EdgeId },
    #[error("order of edge {edge} references unknown crossing {crossing}")]
    UnknownCrossing { edge: EdgeId, crossing: CrossingId },
}

/// Crossing pairs plus the per-edge crossing sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingConfiguration {
    crossings: BTreeMap<CrossingId, [EdgeId; 2]>,
    order: BTreeMap<EdgeId, Vec<CrossingId>>,
}

impl CrossingConfiguration {
    /// Builds a configuration. Edges with a single crossing get their
    /// (trivial) order filled in; other missing orders are reported by
    /// [`CrossingConfiguration::check`].
    pub fn new(
        crossings: impl IntoIterator<Item = (CrossingId, EdgeId, EdgeId)>,
        mut order: BTreeMap<EdgeId, Vec<CrossingId>>,
    ) -> Self {
        let crossings: BTreeMap<_, _> = crossings.into_iter().map(|(c, a, b)| (c, [a, b])).collect();
        let mut on_edge: BTreeMap<EdgeId, Vec<CrossingId>> = BTreeMap::new();
        for (&c, &[a, b]) in &crossings {
            on_edge.entry(a).or_default().push(c);
            if b != a {
                on_edge.entry(b).or_default().push(c);
            }
        }
        for (e, list) in on_edge {
            if list.len() == 1 {
                order.entry(e).or_insert(list);
            }
        }
        CrossingConfiguration { crossings, order }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Number of crossings `k`.
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.crossings.keys().copied()
    }

    pub fn crossings(&self) -> impl Iterator<Item = (CrossingId, [EdgeId; 2])> + '_ {
        self.crossings.iter().map(|(&c, &e)| (c, e))
    }

    pub fn edges_of(&self, c: CrossingId) -> Option<[EdgeId; 2]> {
        self.crossings.get(&c).copied()
    }

    pub fn contains(&self, c: CrossingId) -> bool {
        self.crossings.contains_key(&c)
    }

    /// Crossings along `e`, from its lower-id endpoint.
    pub fn order(&self, e: EdgeId) -> &[CrossingId] {
        self.order.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn orders(&self) -> &BTreeMap<EdgeId, Vec<CrossingId>> {
        &self.order
    }

    pub fn crossed_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.order.keys().copied()
    }

    /// Drops the given crossings from the pair list and every order.
    pub fn without(&self, removed: &[CrossingId]) -> Self {
        let removed: HashSet<_> = removed.iter().copied().collect();
        let crossings = self
            .crossings
            .iter()
            .filter(|(c, _)| !removed.contains(c))
            .map(|(&c, &e)| (c, e))
            .collect();
        let order = self
            .order
            .iter()
            .map(|(&e, list)| (e, list.iter().copied().filter(|c| !removed.contains(c)).collect::<Vec<_>>()))
            .filter(|(_, list)| !list.is_empty())
            .collect();
        CrossingConfiguration { crossings, order }
    }

    /// Structural consistency against `graph`.
    pub fn check(&self, graph: &WeightedGraph) -> Result<(), ConfigError> {
        let mut expected: BTreeMap<EdgeId, BTreeSet<CrossingId>> = BTreeMap::new();
        for (&c, &[a, b]) in &self.crossings {
            for e in [a, b] {
                if e >= graph.edge_count() {
                    return Err(ConfigError::NoSuchEdge { crossing: c, edge: e });
                }
            }
            if a == b {
                return Err(ConfigError::SameEdge(c));
            }
            expected.entry(a).or_default().insert(c);
            expected.entry(b).or_default().insert(c);
        }
        for (&e, list) in &self.order {
            for &c in list {
                if !self.crossings.contains_key(&c) {
                    return Err(ConfigError::UnknownCrossing { edge: e, crossing: c });
                }
            }
            let set: BTreeSet<_> = list.iter().copied().collect();
            if set.len() != list.len() || expected.get(&e) != Some(&set) {
                return Err(ConfigError::OrderMismatch { edge: e });
            }
        }
        if let Some(&e) = expected.keys().find(|e| !self.order.contains_key(e)) {
            return Err(ConfigError::MissingOrder(e));
        }
        Ok(())
    }
}

/// True iff no crossing joins adjacent edges and no edge pair crosses twice.
pub fn is_good(graph: &WeightedGraph, config: &CrossingConfiguration) -> bool {
    first_bad_crossing(graph, config).is_none()
}

/// The lowest-id crossing that violates goodness.
pub fn first_bad_crossing(graph: &WeightedGraph, config: &CrossingConfiguration) -> Option<CrossingId> {
    let mut pairs = HashSet::new();
    config
        .crossings()
        .find(|&(_, [a, b])| {
            let (ea, eb) = (graph.edge(a), graph.edge(b));
            ea.touches(eb.u) || ea.touches(eb.v) || !pairs.insert((a.min(b), a.max(b)))
        })
        .map(|(c, _)| c)
}

/// A crossing id with its two edges.
pub type CrossingTriple = (CrossingId, EdgeId, EdgeId);

/// The graph obtained by turning every crossing into a degree-4 dummy node.
///
/// Nodes `0..original_nodes` are the graph's nodes; dummy `original_nodes + i`
/// stands for the `i`-th crossing in id order. Segments may be parallel when
/// the configuration is not good.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planarization {
    pub original_nodes: usize,
    pub edges: Vec<(NodeId, NodeId)>,
    /// Original edge and segment index (from the lower endpoint) per segment.
    pub segment_origin: Vec<(EdgeId, usize)>,
    pub dummy_crossing: Vec<CrossingId>,
    /// Segments at each dummy: first edge before/after at slots 0/2, second
    /// edge before/after at slots 1/3, so a proper crossing alternates.
    pub dummy_segments: Vec<[EdgeId; 4]>,
}

impl Planarization {
    pub fn node_count(&self) -> usize {
        self.original_nodes + self.dummy_crossing.len()
    }

    pub fn is_dummy(&self, v: NodeId) -> bool {
        v >= self.original_nodes
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Removes every dummy by joining opposite segments. Returns the
    /// endpoints of each original edge that occurs, keyed by edge id, and the
    /// crossing pairs.
    pub fn contract(&self) -> (BTreeMap<EdgeId, (NodeId, NodeId)>, Vec<CrossingTriple>) {
        let n = self.original_nodes;
        let mut edges = BTreeMap::new();
        let mut visited = vec![false; self.edges.len()];
        for s in 0..self.edges.len() {
            if visited[s] {
                continue;
            }
            let (a, b) = self.edges[s];
            if a >= n && b >= n {
                continue;
            }
            // walk from the original endpoint through dummies
            let (mut node, mut seg) = if a < n { (a, s) } else { (b, s) };
            let start = node;
            loop {
                visited[seg] = true;
                let (x, y) = self.edges[seg];
                let next = if x == node { y } else { x };
                if next < n {
                    edges.insert(self.segment_origin[seg].0, (start.min(next), start.max(next)));
                    break;
                }
                let slots = &self.dummy_segments[next - n];
                let slot = slots.iter().position(|&t| t == seg).expect("segment at dummy");
                node = next;
                seg = slots[(slot + 2) % 4];
            }
        }
        let crossings = self
            .dummy_crossing
            .iter()
            .zip(&self.dummy_segments)
            .map(|(&c, slots)| (c, self.segment_origin[slots[0]].0, self.segment_origin[slots[1]].0))
            .collect();
        (edges, crossings)
    }
}

/// Replaces every crossing of `config` by a dummy node.
pub fn planarize(graph: &WeightedGraph, config: &CrossingConfiguration) -> Result<Planarization, ConfigError> {
    config.check(graph)?;
    let n = graph.node_count();
    let dummy_crossing: Vec<CrossingId> = config.ids().collect();
    let dummy_of: HashMap<CrossingId, NodeId> =
        dummy_crossing.iter().enumerate().map(|(i, &c)| (c, n + i)).collect();
    let mut edges = Vec::new();
    let mut segment_origin = Vec::new();
    let mut dummy_segments = vec![[usize::MAX; 4]; dummy_crossing.len()];
    for (id, e) in graph.edges().iter().enumerate() {
        let list = config.order(id);
        let mut path = Vec::with_capacity(list.len() + 2);
        path.push(e.low());
        path.extend(list.iter().map(|c| dummy_of[c]));
        path.push(e.high());
        for (j, w) in path.windows(2).enumerate() {
            let s = edges.len();
            edges.push((w[0], w[1]));
            segment_origin.push((id, j));
            for (end, &x) in w.iter().enumerate() {
                if x >= n {
                    let c = dummy_crossing[x - n];
                    let first = config.edges_of(c).unwrap()[0] == id;
                    // end 1 of the segment is the dummy reached going forward
                    let slot = match (first, end) {
                        (true, 1) => 0,
                        (false, 1) => 1,
                        (true, _) => 2,
                        (false, _) => 3,
                    };
                    dummy_segments[x - n][slot] = s;
                }
            }
        }
    }
    Ok(Planarization { original_nodes: n, edges, segment_origin, dummy_crossing, dummy_segments })
}

/// A planarization together with a planar rotation system in which every
/// dummy alternates between its two edges.
#[derive(Clone, Debug)]
pub struct PlanarizedEmbedding {
    pub planarization: Planarization,
    pub rotation: RotationSystem,
}

impl PlanarizedEmbedding {
    /// Whether the rotation at `dummy` alternates between its two edges.
    pub fn alternates(&self, dummy: NodeId) -> bool {
        let p = &self.planarization;
        let slots = p.dummy_segments[dummy - p.original_nodes];
        let rot = self.rotation.rotation(dummy);
        let edge_of = |s: EdgeId| usize::from(slots[1] == s || slots[3] == s);
        rot.len() == 4 && (0..4).all(|i| edge_of(rot[i]) != edge_of(rot[(i + 1) % 4]))
    }
}

#[derive(Clone, Debug)]
pub enum Validation {
    Feasible(PlanarizedEmbedding),
    /// Some declared crossings are touches; `config` has them removed.
    Reduced { config: CrossingConfiguration, removed: Vec<CrossingId> },
    Infeasible,
}

impl Validation {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Validation::Feasible(_))
    }
}

/// Feasibility test for a crossing configuration.
///
/// The planarization must be planar, and some planar embedding must rotate
/// every dummy as `e1, e2, e1, e2`. The rotation constraint is enforced by
/// replacing a dummy with a wheel whose rim carries its four segments in
/// alternating order; a wheel has a unique embedding up to mirroring. Dummies
/// that cannot be made to alternate are touches and get removed.
pub fn validate(graph: &WeightedGraph, config: &CrossingConfiguration) -> Result<Validation, ConfigError> {
    let planarization = planarize(graph, config)?;
    let k = planarization.dummy_crossing.len();
    if !Gadget::build(&planarization, &vec![false; k]).is_planar() {
        return Ok(Validation::Infeasible);
    }
    let all = Gadget::build(&planarization, &vec![true; k]);
    if let Some(rotation) = all.rotation_of_planarization(&planarization) {
        return Ok(Validation::Feasible(PlanarizedEmbedding { planarization, rotation }));
    }
    let mut kept = vec![false; k];
    let mut removed = Vec::new();
    for i in 0..k {
        kept[i] = true;
        if !Gadget::build(&planarization, &kept).is_planar() {
            kept[i] = false;
            removed.push(planarization.dummy_crossing[i]);
        }
    }
    Ok(Validation::Reduced { config: config.without(&removed), removed })
}

/// Repeats [`validate`] until the configuration is feasible, returning it with
/// the touches removed along the way. `None` when the planarization is not
/// planar.
pub fn reduce_touches(
    graph: &WeightedGraph,
    config: &CrossingConfiguration,
) -> Result<Option<(CrossingConfiguration, PlanarizedEmbedding, Vec<CrossingId>)>, ConfigError> {
    let mut current = config.clone();
    let mut removed = Vec::new();
    loop {
        match validate(graph, &current)? {
            Validation::Feasible(embedding) => return Ok(Some((current, embedding, removed))),
            Validation::Reduced { config, removed: r } => {
                debug_assert!(config.len() < current.len());
                removed.extend(r);
                current = config;
            }
            Validation::Infeasible => return Ok(None),
        }
    }
}

/// The planarization with parallel segments subdivided and selected dummies
/// replaced by wheels.
struct Gadget {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    /// For each planarization segment, the gadget edge at its first and second end.
    segment_ends: Vec<[EdgeId; 2]>,
    /// Spoke edge ids per wheeled dummy, by slot.
    spokes: HashMap<NodeId, [EdgeId; 4]>,
}

impl Gadget {
    fn build(p: &Planarization, wheeled: &[bool]) -> Self {
        let mut node_count = p.node_count();
        let mut rim: HashMap<NodeId, [NodeId; 4]> = HashMap::new();
        for (i, _) in wheeled.iter().enumerate().filter(|(_, &w)| w) {
            let d = p.original_nodes + i;
            rim.insert(d, [node_count, node_count + 1, node_count + 2, node_count + 3]);
            node_count += 4;
        }
        let attach = |x: NodeId, s: EdgeId| -> NodeId {
            match rim.get(&x) {
                Some(r) => {
                    let slot = p.dummy_segments[x - p.original_nodes].iter().position(|&t| t == s).unwrap();
                    r[slot]
                }
                None => x,
            }
        };
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        let mut segment_ends = Vec::with_capacity(p.edges.len());
        for (s, &(a, b)) in p.edges.iter().enumerate() {
            let (a, b) = (attach(a, s), attach(b, s));
            if seen.insert((a.min(b), a.max(b))) {
                edges.push((a, b));
                segment_ends.push([edges.len() - 1; 2]);
            } else {
                let mid = node_count;
                node_count += 1;
                edges.push((a, mid));
                edges.push((mid, b));
                segment_ends.push([edges.len() - 2, edges.len() - 1]);
            }
        }
        let mut spokes = HashMap::new();
        let mut wheel_hubs: Vec<_> = rim.iter().collect();
        wheel_hubs.sort();
        for (&d, r) in wheel_hubs {
            let mut ids = [0; 4];
            for (slot, &c) in r.iter().enumerate() {
                ids[slot] = edges.len();
                edges.push((d, c));
            }
            for i in 0..4 {
                edges.push((r[i], r[(i + 1) % 4]));
            }
            spokes.insert(d, ids);
        }
        Gadget { node_count, edges, segment_ends, spokes }
    }

    fn is_planar(&self) -> bool {
        planar_embedding(self.node_count, &self.edges).is_some()
    }

    /// Contracts the wheels and subdivisions of a planar gadget embedding back
    /// onto the planarization.
    fn rotation_of_planarization(&self, p: &Planarization) -> Option<RotationSystem> {
        let embedding = planar_embedding(self.node_count, &self.edges)?;
        let mut segment_at: HashMap<(NodeId, EdgeId), EdgeId> = HashMap::new();
        for (s, &(a, b)) in p.edges.iter().enumerate() {
            segment_at.insert((a, self.segment_ends[s][0]), s);
            segment_at.insert((b, self.segment_ends[s][1]), s);
        }
        let rotation = (0..p.node_count())
            .map(|v| match self.spokes.get(&v) {
                Some(spokes) => {
                    let slots = p.dummy_segments[v - p.original_nodes];
                    embedding
                        .rotation(v)
                        .iter()
                        .map(|t| slots[spokes.iter().position(|s| s == t).unwrap()])
                        .collect()
                }
                None => embedding.rotation(v).iter().map(|&t| segment_at[&(v, t)]).collect(),
            })
            .collect();
        let rotation = RotationSystem::new(p.edges.clone(), rotation);
        debug_assert!(rotation.is_planar_embedding());
        Some(rotation)
    }
}
