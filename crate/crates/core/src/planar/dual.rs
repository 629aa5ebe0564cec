//! Dual graph of an embedded plane graph.

use crate::planarity::RotationSystem;

/// One node per face; dual edge `e` separates the two faces on either side
/// of primal edge `e`. Bridges give self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub face_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }
}

pub fn dual_graph(embedding: &RotationSystem) -> DualGraph {
    let faces = embedding.faces();
    let edges = (0..embedding.edge_count())
        .map(|e| (faces.face_of_dart[2 * e], faces.face_of_dart[2 * e + 1]))
        .collect();
    DualGraph { face_count: faces.count, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::planar_embedding;

    #[test]
    fn k4_dual_is_k4() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let d = dual_graph(&planar_embedding(4, &edges).unwrap());
        assert_eq!(d.face_count, 4);
        let mut deg = vec![0; 4];
        for &(a, b) in &d.edges {
            assert_ne!(a, b);
            deg[a] += 1;
            deg[b] += 1;
        }
        assert_eq!(deg, vec![3; 4]);
    }

    #[test]
    fn bridges_become_loops() {
        let d = dual_graph(&planar_embedding(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(d.face_count, 1);
        assert!(d.is_loop(0) && d.is_loop(1));
    }

    #[test]
    fn cycle_has_two_faces() {
        let d = dual_graph(&planar_embedding(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap());
        assert_eq!(d.face_count, 2);
        assert!(d.edges.iter().all(|&(a, b)| a != b));
    }
}
