//! Minimum-weight T-joins for non-negative weights.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Weight;

use super::matching::min_weight_perfect_matching;

/// Shortest-path distances and predecessor edges from `source`.
fn dijkstra(
    adjacency: &[Vec<(usize, usize)>],
    edges: &[(usize, usize, Weight)],
    source: usize,
) -> (Vec<Option<Weight>>, Vec<usize>) {
    let n = adjacency.len();
    let mut dist: Vec<Option<Weight>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v] != Some(d) {
            continue;
        }
        for &(w, e) in &adjacency[v] {
            let nd = d + edges[e].2;
            if dist[w].is_none_or(|old| nd < old) {
                dist[w] = Some(nd);
                pred[w] = e;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (dist, pred)
}

/// A minimum-weight edge set whose odd-degree nodes are exactly `terminals`.
/// Weights must be non-negative; self-loops are never used. Returns `None`
/// when some connected component holds an odd number of terminals.
pub fn min_weight_t_join(
    node_count: usize,
    edges: &[(usize, usize, Weight)],
    terminals: &[usize],
) -> Option<(Vec<usize>, Weight)> {
    debug_assert!(edges.iter().all(|e| e.2 >= 0));
    if terminals.is_empty() {
        return Some((Vec::new(), 0));
    }
    let mut adjacency = vec![Vec::new(); node_count];
    for (e, &(a, b, _)) in edges.iter().enumerate() {
        if a != b {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
    }
    let trees: Vec<_> = terminals.iter().map(|&t| dijkstra(&adjacency, edges, t)).collect();
    let mut pairs = Vec::new();
    for (i, (dist, _)) in trees.iter().enumerate() {
        for (j, &t) in terminals.iter().enumerate().skip(i + 1) {
            if let Some(d) = dist[t] {
                pairs.push((i, j, d));
            }
        }
    }
    let matching = min_weight_perfect_matching(terminals.len(), &pairs)?;
    let mut in_join = vec![false; edges.len()];
    for k in matching {
        let (i, j, _) = pairs[k];
        let pred = &trees[i].1;
        let mut v = terminals[j];
        while v != terminals[i] {
            let e = pred[v];
            in_join[e] = !in_join[e];
            let (a, b, _) = edges[e];
            v = if a == v { b } else { a };
        }
    }
    let join: Vec<usize> = (0..edges.len()).filter(|&e| in_join[e]).collect();
    let weight = join.iter().map(|&e| edges[e].2).sum();
    Some((join, weight))
}
