//! Rotation systems and the left-right planarity test.
//!
//! The test follows the Brandes formulation of the de Fraysseix–Rosenstiehl
//! criterion: a DFS orientation, a constraint phase over conflict pairs of
//! return-edge intervals, and an embedding phase that turns the resolved
//! sides into a clockwise rotation at every node.

use crate::graph::{EdgeId, NodeId};

/// Clockwise cyclic order of incident edges around each node.
///
/// Edges are referenced by id, so the structure also describes multigraphs.
/// Self-loops are not supported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    ends: Vec<(NodeId, NodeId)>,
    rotation: Vec<Vec<EdgeId>>,
}

/// Face structure of a rotation system. Dart `2e` runs from `ends[e].0` to
/// `ends[e].1`, dart `2e + 1` the other way.
#[derive(Clone, Debug)]
pub struct Faces {
    pub count: usize,
    pub face_of_dart: Vec<usize>,
}

impl RotationSystem {
    pub fn new(ends: Vec<(NodeId, NodeId)>, rotation: Vec<Vec<EdgeId>>) -> Self {
        RotationSystem { ends, rotation }
    }

    pub fn node_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn rotation(&self, v: NodeId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn ends(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.ends[e]
    }

    fn head(&self, dart: usize) -> NodeId {
        let (a, b) = self.ends[dart / 2];
        if dart.is_multiple_of(2) {
            b
        } else {
            a
        }
    }

    /// Traces every face by following, at each head, the clockwise successor
    /// of the edge just arrived on.
    pub fn faces(&self) -> Faces {
        let m = self.ends.len();
        // position of each edge end inside its node's rotation; end 0 sits at
        // ends[e].0, end 1 at ends[e].1
        let mut position = vec![usize::MAX; 2 * m];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let end = usize::from(self.ends[e].0 != v);
                position[2 * e + end] = i;
            }
        }
        let mut face_of_dart = vec![usize::MAX; 2 * m];
        let mut count = 0;
        for start in 0..2 * m {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let mut dart = start;
            loop {
                face_of_dart[dart] = count;
                let e = dart / 2;
                let h = self.head(dart);
                // the dart arrives at end 1 when it is the forward dart
                let arrive_end = 1 - dart % 2;
                let rot = &self.rotation[h];
                let next_edge = rot[(position[2 * e + arrive_end] + 1) % rot.len()];
                dart = if self.ends[next_edge].0 == h { 2 * next_edge } else { 2 * next_edge + 1 };
                if dart == start {
                    break;
                }
            }
            count += 1;
        }
        Faces { count, face_of_dart }
    }

    /// Checks that every edge appears once at each end and that every
    /// connected component satisfies `n − m + f = 2`.
    pub fn is_planar_embedding(&self) -> bool {
        let n = self.node_count();
        let m = self.edge_count();
        let mut seen = vec![0u8; 2 * m];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                if e >= m {
                    return false;
                }
                let (a, b) = self.ends[e];
                if a == b {
                    return false;
                }
                let end = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return false;
                };
                seen[2 * e + end] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            return false;
        }
        let faces = self.faces();
        // union-find over nodes
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.ends {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut nodes = vec![0i64; n];
        let mut edges = vec![0i64; n];
        let mut face_root = vec![usize::MAX; faces.count];
        for v in 0..n {
            let r = find(&mut parent, v);
            nodes[r] += 1;
        }
        for (e, &(a, _)) in self.ends.iter().enumerate() {
            let r = find(&mut parent, a);
            edges[r] += 1;
            for d in [2 * e, 2 * e + 1] {
                face_root[faces.face_of_dart[d]] = r;
            }
        }
        let mut face_total = vec![0i64; n];
        for &r in &face_root {
            face_total[r] += 1;
        }
        (0..n).all(|r| edges[r] == 0 || nodes[r] - edges[r] + face_total[r] == 2)
    }
}

/// Returns a planar rotation system for the simple graph on `node_count`
/// nodes, or `None` when it is not planar.
pub fn planar_embedding(node_count: usize, edges: &[(NodeId, NodeId)]) -> Option<RotationSystem> {
    let n = node_count;
    if n > 2 && edges.len() > 3 * n - 6 {
        return None;
    }
    let mut state = LrState::new(n, edges);
    for v in 0..n {
        if state.height[v].is_none() {
            state.height[v] = Some(0);
            state.roots.push(v);
            state.orient(v);
        }
    }
    for v in 0..n {
        let mut out = state.out[v].clone();
        out.sort_by_key(|&e| state.nesting_depth[e]);
        state.ordered[v] = out;
    }
    for i in 0..state.roots.len() {
        let root = state.roots[i];
        if !state.test(root) {
            return None;
        }
    }
    Some(state.embed())
}

pub fn is_planar(node_count: usize, edges: &[(NodeId, NodeId)]) -> bool {
    planar_embedding(node_count, edges).is_some()
}

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn single(e: EdgeId) -> Self {
        Interval { low: Some(e), high: Some(e) }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    id: u64,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState {
    ends: Vec<(NodeId, NodeId)>,
    adjacency: Vec<Vec<EdgeId>>,
    oriented: Vec<bool>,
    src: Vec<NodeId>,
    dst: Vec<NodeId>,
    out: Vec<Vec<EdgeId>>,
    ordered: Vec<Vec<EdgeId>>,
    roots: Vec<NodeId>,
    height: Vec<Option<i64>>,
    parent_edge: Vec<Option<EdgeId>>,
    lowpt: Vec<i64>,
    lowpt2: Vec<i64>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<EdgeId>>,
    side: Vec<i64>,
    lowpt_edge: Vec<Option<EdgeId>>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<Option<u64>>,
    next_pair: u64,
    // embedding phase
    left_ref: Vec<Option<EdgeId>>,
    right_ref: Vec<Option<EdgeId>>,
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<Option<usize>>,
}

impl LrState {
    fn new(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let m = edges.len();
        let mut adjacency = vec![Vec::new(); n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            assert_ne!(a, b, "self-loops are not supported");
            adjacency[a].push(e);
            adjacency[b].push(e);
        }
        LrState {
            ends: edges.to_vec(),
            adjacency,
            oriented: vec![false; m],
            src: vec![0; m],
            dst: vec![0; m],
            out: vec![Vec::new(); n],
            ordered: vec![Vec::new(); n],
            roots: Vec::new(),
            height: vec![None; n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            reference: vec![None; m],
            side: vec![1; m],
            lowpt_edge: vec![None; m],
            stack: Vec::new(),
            stack_bottom: vec![None; m],
            next_pair: 0,
            left_ref: vec![None; n],
            right_ref: vec![None; n],
            cw: vec![0; 2 * m],
            ccw: vec![0; 2 * m],
            first: vec![None; n],
        }
    }

    fn other(&self, e: EdgeId, v: NodeId) -> NodeId {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn orient(&mut self, v: NodeId) {
        let parent = self.parent_edge[v];
        let hv = self.height[v].unwrap();
        for i in 0..self.adjacency[v].len() {
            let vw = self.adjacency[v][i];
            if self.oriented[vw] {
                continue;
            }
            let w = self.other(vw, v);
            self.oriented[vw] = true;
            self.src[vw] = v;
            self.dst[vw] = w;
            self.out[v].push(vw);
            self.lowpt[vw] = hv;
            self.lowpt2[vw] = hv;
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw];
            if self.lowpt2[vw] < hv {
                // chordal
                self.nesting_depth[vw] += 1;
            }
            if let Some(e) = parent {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn top_id(&self) -> Option<u64> {
        self.stack.last().map(|p| p.id)
    }

    fn new_pair(&mut self) -> ConflictPair {
        self.next_pair += 1;
        ConflictPair { id: self.next_pair, left: Interval::default(), right: Interval::default() }
    }

    fn conflicting(&self, interval: &Interval, b: EdgeId) -> bool {
        match interval.high {
            Some(h) if !interval.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> i64 {
        let low = |i: &Interval| i.low.map(|e| self.lowpt[e]);
        match (p.left.is_empty(), p.right.is_empty()) {
            (true, _) => low(&p.right).unwrap_or(i64::MAX),
            (_, true) => low(&p.left).unwrap_or(i64::MAX),
            _ => match (low(&p.left), low(&p.right)) {
                (Some(a), Some(b)) => a.min(b),
                (a, b) => a.or(b).unwrap_or(i64::MAX),
            },
        }
    }

    fn test(&mut self, v: NodeId) -> bool {
        let parent = self.parent_edge[v];
        let hv = self.height[v].unwrap();
        for i in 0..self.ordered[v].len() {
            let ei = self.ordered[v][i];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.top_id();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                let mut pair = self.new_pair();
                pair.right = Interval::single(ei);
                self.stack.push(pair);
            }
            if self.lowpt[ei] < hv {
                let e = parent.expect("non-root has a parent edge");
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = self.new_pair();
        // merge return edges of ei into p.right
        loop {
            let Some(mut q) = self.stack.pop() else { return false };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(l) = p.right.low {
                    self.reference[l] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.reference[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(l) = p.left.low {
                self.reference[l] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.src[e];
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            // trim right interval
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.reference[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        // side of e is the side of a highest return edge
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edge implies a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: EdgeId) -> i64 {
        let mut chain = Vec::new();
        let mut cur = e;
        while let Some(r) = self.reference[cur] {
            chain.push(cur);
            cur = r;
        }
        let mut s = self.side[cur];
        for &c in chain.iter().rev() {
            self.side[c] *= s;
            self.reference[c] = None;
            s = self.side[c];
        }
        self.side[e]
    }

    fn half(&self, e: EdgeId, x: NodeId) -> usize {
        if self.src[e] == x {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn add_cw(&mut self, x: NodeId, e: EdgeId, reference: Option<EdgeId>) {
        let h = self.half(e, x);
        match reference {
            None => {
                self.cw[h] = h;
                self.ccw[h] = h;
                self.first[x] = Some(h);
            }
            Some(r) => {
                let r = self.half(r, x);
                let next = self.cw[r];
                self.cw[r] = h;
                self.ccw[h] = r;
                self.cw[h] = next;
                self.ccw[next] = h;
            }
        }
    }

    fn add_ccw(&mut self, x: NodeId, e: EdgeId, reference: Option<EdgeId>) {
        match reference {
            None => self.add_cw(x, e, None),
            Some(r) => {
                let rh = self.half(r, x);
                let before = self.ccw[rh] / 2;
                self.add_cw(x, e, Some(before));
                if self.first[x] == Some(rh) {
                    self.first[x] = Some(self.half(e, x));
                }
            }
        }
    }

    fn add_first(&mut self, x: NodeId, e: EdgeId) {
        match self.first[x] {
            Some(f) => {
                let r = f / 2;
                self.add_ccw(x, e, Some(r));
            }
            None => self.add_cw(x, e, None),
        }
        self.first[x] = Some(self.half(e, x));
    }

    fn embed(mut self) -> RotationSystem {
        let m = self.ends.len();
        for e in 0..m {
            self.nesting_depth[e] *= self.sign(e);
        }
        let n = self.out.len();
        for v in 0..n {
            let mut out = self.out[v].clone();
            out.sort_by_key(|&e| self.nesting_depth[e]);
            let mut previous = None;
            for &e in &out {
                self.add_cw(v, e, previous);
                previous = Some(e);
            }
            self.ordered[v] = out;
        }
        for i in 0..self.roots.len() {
            let root = self.roots[i];
            self.embed_from(root);
        }
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            if let Some(start) = self.first[v] {
                let mut h = start;
                loop {
                    rot.push(h / 2);
                    h = self.cw[h];
                    if h == start {
                        break;
                    }
                }
            }
        }
        RotationSystem::new(self.ends, rotation)
    }

    fn embed_from(&mut self, v: NodeId) {
        for i in 0..self.ordered[v].len() {
            let ei = self.ordered[v][i];
            let w = self.dst[ei];
            if self.parent_edge[w] == Some(ei) {
                self.add_first(w, ei);
                self.left_ref[v] = Some(ei);
                self.right_ref[v] = Some(ei);
                self.embed_from(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.add_cw(w, ei, r);
            } else {
                let l = self.left_ref[w];
                self.add_ccw(w, ei, l);
                self.left_ref[w] = Some(ei);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        e
    }

    fn k33() -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        e
    }

    #[test]
    fn tree_has_one_face() {
        let edges = vec![(0, 1), (0, 2), (2, 3), (2, 4)];
        let rot = planar_embedding(5, &edges).unwrap();
        assert!(rot.is_planar_embedding());
        assert_eq!(rot.faces().count, 1);
    }

    #[test]
    fn k4_has_four_faces() {
        let rot = planar_embedding(4, &complete(4)).unwrap();
        assert!(rot.is_planar_embedding());
        assert_eq!(rot.faces().count, 4);
    }

    #[test]
    fn kuratowski_graphs_are_rejected() {
        assert!(planar_embedding(5, &complete(5)).is_none());
        assert!(planar_embedding(6, &k33()).is_none());
        let mut k5_minus = complete(5);
        k5_minus.pop();
        assert!(planar_embedding(5, &k5_minus).unwrap().is_planar_embedding());
        let mut k33_minus = k33();
        k33_minus.remove(4);
        assert!(planar_embedding(6, &k33_minus).unwrap().is_planar_embedding());
    }

    #[test]
    fn disconnected_graphs_embed_per_component() {
        let mut edges = complete(4);
        edges.extend([(4, 5), (5, 6), (6, 4)]);
        let rot = planar_embedding(8, &edges).unwrap();
        assert!(rot.is_planar_embedding());
        assert_eq!(rot.faces().count, 4 + 2);
        assert!(rot.rotation(7).is_empty());
    }

    #[test]
    fn grid_and_wheel_embed() {
        let side = 6;
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    edges.push((v, v + 1));
                }
                if r + 1 < side {
                    edges.push((v, v + side));
                }
            }
        }
        let rot = planar_embedding(side * side, &edges).unwrap();
        assert!(rot.is_planar_embedding());
        assert_eq!(rot.faces().count, (side - 1) * (side - 1) + 1);

        let mut wheel: Vec<_> = (1..=8).map(|i| (0, i)).collect();
        wheel.extend((1..=8).map(|i| (i, i % 8 + 1)));
        let rot = planar_embedding(9, &wheel).unwrap();
        assert!(rot.is_planar_embedding());
        assert_eq!(rot.faces().count, 9);
    }

    #[test]
    fn bad_rotation_fails_euler_check() {
        // K4 with one rotation reversed is a torus embedding
        let edges = complete(4);
        let good = planar_embedding(4, &edges).unwrap();
        let mut rotation: Vec<Vec<EdgeId>> = (0..4).map(|v| good.rotation(v).to_vec()).collect();
        rotation[0].reverse();
        let flipped = RotationSystem::new(edges, rotation);
        assert!(!flipped.is_planar_embedding());
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        assert!(planar_embedding(10, &edges).is_none());
    }
}
