//! Bipartite form of a hypergraph: face-part vertices X joined to the
//! generator-part vertices Y they contain.

use super::{mask_vertices, Hypergraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondingGraph {
    mu: usize,
    /// N(x_i) as a mask over Y.
    x_neighbors: Vec<u32>,
}

impl CorrespondingGraph {
    pub fn new(mu: usize, x_neighbors: Vec<u32>) -> Self {
        Self { mu, x_neighbors }
    }

    pub fn from_edges(n: usize, mu: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut x_neighbors = vec![0u32; n];
        for &(x, y) in edges {
            if x >= n || y >= mu {
                return Err(Error::InvalidHypergraph(format!("edge ({x}, {y}) out of range")));
            }
            x_neighbors[x] |= 1 << y;
        }
        Ok(Self { mu, x_neighbors })
    }

    pub fn x_count(&self) -> usize {
        self.x_neighbors.len()
    }

    pub fn y_count(&self) -> usize {
        self.mu
    }

    pub fn x_neighbors(&self) -> &[u32] {
        &self.x_neighbors
    }

    /// N(y_j) as a mask over X.
    pub fn y_neighbors(&self, j: usize) -> u128 {
        self.x_neighbors
            .iter()
            .enumerate()
            .filter(|(_, &n)| n >> j & 1 == 1)
            .fold(0, |a, (i, _)| a | 1 << i)
    }

    pub fn is_connected(&self) -> bool {
        if self.x_neighbors.contains(&0) || self.mu == 0 {
            return false;
        }
        let full = if self.mu == 32 { u32::MAX } else { (1u32 << self.mu) - 1 };
        let mut reached = 1u32;
        loop {
            let next = self
                .x_neighbors
                .iter()
                .filter(|&&n| n & reached != 0)
                .fold(reached, |a, n| a | n);
            if next == reached {
                return reached == full;
            }
            reached = next;
        }
    }

    /// N(y_i) ⊄ N(y_j) for all i ≠ j.
    pub fn y_incomparable(&self) -> bool {
        assert!(self.x_neighbors.len() <= 128);
        let ny: Vec<u128> = (0..self.mu).map(|j| self.y_neighbors(j)).collect();
        (0..self.mu).all(|i| (0..self.mu).all(|j| i == j || ny[i] & !ny[j] != 0))
    }

    /// N(x_i) ≠ N(x_j) for all i ≠ j.
    pub fn x_distinct(&self) -> bool {
        let mut sorted = self.x_neighbors.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_corresponding(&self) -> bool {
        self.is_connected() && self.y_incomparable() && self.x_distinct()
    }

    /// F_i = N(x_i).
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        if !self.is_corresponding() {
            return Err(Error::InvalidHypergraph("not a corresponding graph".into()));
        }
        Hypergraph::new(self.mu, self.x_neighbors.iter().copied())
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        Self { mu: h.mu(), x_neighbors: h.faces().to_vec() }
    }

    /// Induced subgraph on the chosen X vertices and all of Y.
    pub fn induced(&self, keep: &[usize]) -> Self {
        Self {
            mu: self.mu,
            x_neighbors: keep.iter().map(|&i| self.x_neighbors[i]).collect(),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.x_neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| mask_vertices(n).map(move |j| (i, j)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::all_permutations;

    #[test]
    fn round_trip_preserves_hypergraph() {
        let h = Hypergraph::from_lists(3, &[vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3]]).unwrap();
        let g = CorrespondingGraph::from_hypergraph(&h);
        assert!(g.is_corresponding());
        assert_eq!(g.to_hypergraph().unwrap(), h);
    }

    #[test]
    fn conditions_track_hypergraph_properties() {
        // Exhaustive over all face families on 3 vertices.
        for family in 1u32..(1 << 7) {
            let faces: Vec<u32> = (1..8u32).filter(|f| family >> (f - 1) & 1 == 1).collect();
            let g = CorrespondingGraph::new(3, faces.clone());
            let Ok(h) = Hypergraph::new(3, faces.iter().copied()) else {
                assert!(!g.is_connected());
                continue;
            };
            assert_eq!(g.y_incomparable(), h.is_separable());
            assert_eq!(g.is_connected(), h.is_connected());
        }
    }

    #[test]
    fn isomorphic_graphs_give_isomorphic_hypergraphs() {
        let h = Hypergraph::from_lists(3, &[vec![1], vec![1, 2], vec![2, 3], vec![3]]).unwrap();
        let g = CorrespondingGraph::from_hypergraph(&h);
        for p in all_permutations(3) {
            let relabeled: Vec<u32> = g
                .x_neighbors()
                .iter()
                .rev()
                .map(|&n| crate::hypergraph::permute_mask(n, &p))
                .collect();
            let g2 = CorrespondingGraph::new(3, relabeled);
            assert!(g2.to_hypergraph().unwrap().is_isomorphic(&h));
        }
    }
}
