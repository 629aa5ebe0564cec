use thiserror::Error;

use crate::graph::{Cut, Weight, WeightedGraph};
use crate::planarity::{planar_embedding, RotationSystem};

use super::dual::dual_graph;
use super::tjoin::min_weight_t_join;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("edge set is not a cut")]
    NotACut,
}

/// Maximum cut of a planar graph with arbitrary integer weights.
pub fn max_cut_planar(graph: &WeightedGraph) -> Result<Cut, PlanarError> {
    let embedding = planar_embedding(graph.node_count(), &graph.endpoints()).ok_or(PlanarError::NotPlanar)?;
    max_cut_embedded(graph, &embedding)
}

/// Maximum cut using the given planar embedding of `graph`.
///
/// Cuts of a plane graph are exactly the edge sets that are even subgraphs of
/// the dual. Starting from the positive edges `D0`, the best such set is
/// `D0 Δ J` for a minimum `|c|`-weight T-join `J`, `T` being the odd faces of
/// `D0`.
pub fn max_cut_embedded(graph: &WeightedGraph, embedding: &RotationSystem) -> Result<Cut, PlanarError> {
    if !embedding.is_planar_embedding() {
        return Err(PlanarError::NotPlanar);
    }
    let dual = dual_graph(embedding);
    let mut in_cut: Vec<bool> = graph.edges().iter().map(|e| e.weight > 0).collect();
    let mut parity = vec![false; dual.face_count];
    for (e, &(f, g)) in dual.edges.iter().enumerate() {
        if in_cut[e] && f != g {
            parity[f] = !parity[f];
            parity[g] = !parity[g];
        }
    }
    let terminals: Vec<usize> = (0..dual.face_count).filter(|&f| parity[f]).collect();
    let weighted: Vec<(usize, usize, Weight)> = dual
        .edges
        .iter()
        .zip(graph.edges())
        .map(|(&(f, g), e)| (f, g, e.weight.abs()))
        .collect();
    let (join, join_weight) =
        min_weight_t_join(dual.face_count, &weighted, &terminals).ok_or(PlanarError::NotACut)?;
    for e in join {
        in_cut[e] = !in_cut[e];
    }
    // bridges never separate faces but may still be cut
    let side = recover_partition(graph, &in_cut)?;
    let cut = Cut::from_sides(graph, side);
    let positive: Weight = graph.edges().iter().map(|e| e.weight.max(0)).sum();
    debug_assert_eq!(cut.value, positive - join_weight);
    Ok(cut)
}

/// Two-colours the nodes so that exactly the marked edges join different
/// sides. Each component's lowest node goes to side `false`.
pub fn recover_partition(graph: &WeightedGraph, in_cut: &[bool]) -> Result<Vec<bool>, PlanarError> {
    let n = graph.node_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for &(w, e) in graph.neighbors(v) {
                let want = sv ^ in_cut[e];
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        stack.push(w);
                    }
                    Some(s) if s != want => return Err(PlanarError::NotACut),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(Option::unwrap).collect())
}
