//! Random instance generators shared by the integration tests.
//!
//! Crossing configurations come from straight-line drawings on random integer
//! points. Exact orientation tests keep them in general position, so every
//! generated configuration is realizable (hence feasible) and good.

#![allow(dead_code)]

use std::collections::BTreeMap;

use maxcut_core::crossing::{CrossingConfiguration, CrossingId};
use maxcut_core::graph::{Edge, EdgeId, NodeId, Weight, WeightedGraph};
use maxcut_core::mcr::{split_node, Realization};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Point = (i64, i64);

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    ((b.0 as i128 - ax) * (c.1 as i128 - ay)) - ((b.1 as i128 - ay) * (c.0 as i128 - ax))
}

/// Position of the crossing of `p` with `q` along `p`, as a fraction.
fn param(p: (Point, Point), q: (Point, Point)) -> (i128, i128) {
    let r = ((p.1 .0 - p.0 .0) as i128, (p.1 .1 - p.0 .1) as i128);
    let s = ((q.1 .0 - q.0 .0) as i128, (q.1 .1 - q.0 .1) as i128);
    let qp = ((q.0 .0 - p.0 .0) as i128, (q.0 .1 - p.0 .1) as i128);
    let num = qp.0 * s.1 - qp.1 * s.0;
    let den = r.0 * s.1 - r.1 * s.0;
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn frac_cmp(a: (i128, i128), b: (i128, i128)) -> std::cmp::Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

#[derive(Clone, Debug)]
pub struct Drawing {
    pub points: Vec<Point>,
    pub edges: Vec<(NodeId, NodeId)>,
    /// Crossing edge pairs, crossing `i` has id `i`.
    pub crossings: Vec<(EdgeId, EdgeId)>,
}

impl Drawing {
    fn segment(&self, e: EdgeId) -> (Point, Point) {
        let (a, b) = self.edges[e];
        let (lo, hi) = (a.min(b), a.max(b));
        (self.points[lo], self.points[hi])
    }

    /// Returns the crossings the new edge would create, or `None` when it
    /// would be degenerate.
    fn try_edge(&self, a: NodeId, b: NodeId) -> Option<Vec<EdgeId>> {
        let (pa, pb) = (self.points[a], self.points[b]);
        for (x, &px) in self.points.iter().enumerate() {
            if x == a || x == b {
                continue;
            }
            if orient(pa, pb, px) == 0 {
                let within = px.0 >= pa.0.min(pb.0)
                    && px.0 <= pa.0.max(pb.0)
                    && px.1 >= pa.1.min(pb.1)
                    && px.1 <= pa.1.max(pb.1);
                if within {
                    return None;
                }
            }
        }
        let mut crossed = Vec::new();
        for (e, &(c, d)) in self.edges.iter().enumerate() {
            if (c == a && d == b) || (c == b && d == a) {
                return None;
            }
            let (pc, pd) = (self.points[c], self.points[d]);
            let shared = [a, b].contains(&c) || [a, b].contains(&d);
            if shared {
                // collinear overlap through a shared endpoint
                let s = if c == a || c == b { c } else { d };
                let other_new = if s == a { pb } else { pa };
                let other_old = if s == c { pd } else { pc };
                let ps = self.points[s];
                if orient(ps, other_new, other_old) == 0 {
                    let dot = (other_new.0 - ps.0) as i128 * (other_old.0 - ps.0) as i128
                        + (other_new.1 - ps.1) as i128 * (other_old.1 - ps.1) as i128;
                    if dot > 0 {
                        return None;
                    }
                }
                continue;
            }
            let o1 = orient(pa, pb, pc);
            let o2 = orient(pa, pb, pd);
            let o3 = orient(pc, pd, pa);
            let o4 = orient(pc, pd, pb);
            if o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 {
                return None;
            }
            if (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0) {
                crossed.push(e);
            }
        }
        // no three curves through one point
        let new_seg = {
            let (lo, hi) = (a.min(b), a.max(b));
            (self.points[lo], self.points[hi])
        };
        let mut params: Vec<(i128, i128)> =
            crossed.iter().map(|&e| param(new_seg, self.segment(e))).collect();
        params.sort_by(|x, y| frac_cmp(*x, *y));
        if params.windows(2).any(|w| frac_cmp(w[0], w[1]).is_eq()) {
            return None;
        }
        for &e in &crossed {
            let t = param(self.segment(e), new_seg);
            for (&(x, y), _) in self.crossings.iter().zip(0..) {
                let other = if x == e {
                    y
                } else if y == e {
                    x
                } else {
                    continue;
                };
                if frac_cmp(param(self.segment(e), self.segment(other)), t).is_eq() {
                    return None;
                }
            }
        }
        Some(crossed)
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, max_crossings: usize) -> bool {
        match self.try_edge(a, b) {
            Some(crossed) if self.crossings.len() + crossed.len() <= max_crossings => {
                let id = self.edges.len();
                self.edges.push((a, b));
                for e in crossed {
                    self.crossings.push((e, id));
                }
                true
            }
            _ => false,
        }
    }

    /// Per-edge crossing order from the lower-id endpoint.
    pub fn orders(&self) -> BTreeMap<EdgeId, Vec<CrossingId>> {
        let mut on_edge: BTreeMap<EdgeId, Vec<(CrossingId, EdgeId)>> = BTreeMap::new();
        for (i, &(e, f)) in self.crossings.iter().enumerate() {
            on_edge.entry(e).or_default().push((CrossingId(i), f));
            on_edge.entry(f).or_default().push((CrossingId(i), e));
        }
        on_edge
            .into_iter()
            .map(|(e, mut list)| {
                let seg = self.segment(e);
                list.sort_by(|x, y| frac_cmp(param(seg, self.segment(x.1)), param(seg, self.segment(y.1))));
                (e, list.into_iter().map(|(c, _)| c).collect())
            })
            .collect()
    }

    pub fn configuration(&self) -> CrossingConfiguration {
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, &(e, f))| (CrossingId(i), e, f))
            .collect::<Vec<_>>();
        CrossingConfiguration::new(crossings, self.orders())
    }

    pub fn graph(&self, weights: &[Weight]) -> WeightedGraph {
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(&(a, b), &w)| Edge::new(a, b, w))
            .collect();
        WeightedGraph::new(self.points.len(), edges).unwrap()
    }

    /// Neighbors of `v` in angular order around its point.
    pub fn angular_neighbors(&self, v: NodeId) -> Vec<NodeId> {
        let pv = self.points[v];
        let mut nbrs: Vec<NodeId> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        let half = |p: Point| {
            let (dx, dy) = (p.0 - pv.0, p.1 - pv.1);
            if dy > 0 || (dy == 0 && dx > 0) {
                0
            } else {
                1
            }
        };
        nbrs.sort_by(|&x, &y| {
            let (px, py) = (self.points[x], self.points[y]);
            half(px).cmp(&half(py)).then_with(|| 0.cmp(&orient(pv, px, py)))
        });
        nbrs
    }
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize, range: i64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.gen_range(0..range), rng.gen_range(0..range));
        if pts.contains(&p) {
            continue;
        }
        // no three collinear points keeps edges away from nodes
        let mut ok = true;
        'outer: for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if orient(pts[i], pts[j], p) == 0 {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            pts.push(p);
        }
    }
    pts
}

/// A random straight-line drawing with at most `max_crossings` crossings.
pub fn random_drawing<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
    max_crossings: usize,
) -> Drawing {
    let points = random_points(rng, n, 1000);
    let mut drawing = Drawing { points, edges: Vec::new(), crossings: Vec::new() };
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    for (a, b) in pairs {
        if rng.gen_bool(density) {
            drawing.add_edge(a, b, max_crossings);
        }
    }
    drawing
}

/// A random connected planar straight-line graph.
pub fn random_connected_planar<R: Rng>(rng: &mut R, n: usize, density: f64) -> Drawing {
    loop {
        let d = random_drawing(rng, n, density, 0);
        if n <= 1 || is_connected(n, &d.edges) {
            return d;
        }
    }
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn random_weights<R: Rng>(rng: &mut R, m: usize, lo: Weight, hi: Weight) -> Vec<Weight> {
    (0..m).map(|_| rng.gen_range(lo..=hi)).collect()
}

pub fn complete_graph(n: usize, weight: Weight) -> WeightedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push(Edge::new(a, b, weight));
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// A realization of the drawn graph with maximum degree 3 and its drawing.
///
/// Every node of degree above 3 becomes a path of split edges; each step
/// moves two rotation-consecutive edges onto a new node. Nodes of degree 3
/// are split once with probability `extra`.
pub fn random_realization<R: Rng>(
    rng: &mut R,
    drawing: &Drawing,
    graph: &WeightedGraph,
    extra: f64,
) -> (Realization, CrossingConfiguration) {
    let mut r = Realization::trivial(graph);
    let mut config = drawing.configuration();
    for v in 0..graph.node_count() {
        let mut rotation: Vec<EdgeId> = drawing
            .angular_neighbors(v)
            .into_iter()
            .map(|u| graph.find_edge(v, u).expect("neighbor edge"))
            .collect();
        if rotation.len() < 3 || (rotation.len() == 3 && !rng.gen_bool(extra)) {
            continue;
        }
        let offset = rng.gen_range(0..rotation.len());
        rotation.rotate_left(offset);
        loop {
            let pair = [rotation[0], rotation[1]];
            let (next, next_config) = split_node(&r, &config, v, &pair);
            let split = r.h.edge_count();
            r = next;
            config = next_config;
            rotation.drain(..2);
            rotation.insert(0, split);
            if rotation.len() <= 3 {
                break;
            }
        }
    }
    (r, config)
}

/// A random PF instance on a drawn graph with `1..=max_crossings` crossings,
/// each edge fixed with probability `fixed`.
pub fn random_triplet<R: Rng>(
    rng: &mut R,
    max_nodes: usize,
    max_crossings: usize,
    fixed: f64,
) -> maxcut_core::split::Triplet {
    use maxcut_core::graph::PFInstance;
    loop {
        let n = rng.gen_range(4..=max_nodes);
        let density = rng.gen_range(0.3..0.9);
        let d = random_drawing(rng, n, density, max_crossings);
        if d.crossings.is_empty() {
            continue;
        }
        let weights = random_weights(rng, d.edges.len(), -10, 10);
        let g = d.graph(&weights);
        let f = (0..g.edge_count()).filter(|_| rng.gen_bool(fixed)).collect();
        let inst = PFInstance::new(g, f).unwrap();
        return maxcut_core::split::Triplet::new(inst, d.configuration());
    }
}
