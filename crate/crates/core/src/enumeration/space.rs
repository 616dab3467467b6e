//! Search space for hypergraphs on at most five vertices.
//!
//! A hypergraph is a face-set word: bit F is set iff the face with vertex
//! mask F is present. The word splits into its graph part (the two-element
//! faces) and a residual (all other faces). Every isomorphism class has a
//! unique representative whose graph part is the chosen representative of
//! its graph class and whose residual is minimal under the automorphisms of
//! that graph. The search index of a representative is
//! `class << rest_bits | residual`.

use crate::hypergraph::{all_permutations, Hypergraph};

pub const MAX_ENUM_MU: usize = 5;

#[derive(Clone, Debug)]
pub struct SearchSpace {
    mu: usize,
    full: u32,
    edge_faces: Vec<u32>,
    rest_faces: Vec<u32>,
    rest_bits: usize,
    perms: Vec<Vec<usize>>,
    /// Permutation action on whole words, byte by byte.
    word_tab: Vec<[[u32; 256]; 4]>,
    /// Permutation action on residuals, byte by byte.
    rest_tab: Vec<Vec<[u32; 256]>>,
    /// Residual byte to word bits.
    rest_spread: Vec<[u32; 256]>,
    /// Residual byte to union of the faces it holds.
    rest_union: Vec<[u32; 256]>,
    /// Per labeled graph: its class and every permutation carrying it onto
    /// the class representative.
    graph_class: Vec<u16>,
    graph_to_rep: Vec<Vec<u8>>,
    class_reps: Vec<u32>,
    class_word: Vec<u32>,
    class_union: Vec<u32>,
    /// Faces containing i but not j.
    separators: Vec<(u32, u32)>,
    /// Faces meeting a vertex set.
    meets: Vec<u32>,
    /// Faces containing vertex v.
    contains: Vec<u32>,
}

impl SearchSpace {
    pub fn new(mu: usize) -> Self {
        assert!((1..=MAX_ENUM_MU).contains(&mu), "enumeration supports 1 <= mu <= 5");
        let full = (1u32 << mu) - 1;
        let edge_faces: Vec<u32> = (1..=full).filter(|f| f.count_ones() == 2).collect();
        let rest_faces: Vec<u32> = (1..=full).filter(|f| f.count_ones() != 2).collect();
        let rest_bits = rest_faces.len();
        let perms = all_permutations(mu);
        let permute = |f: u32, p: &[usize]| -> u32 {
            (0..mu).filter(|v| f >> v & 1 == 1).fold(0, |a, v| a | 1 << p[v])
        };

        let word_tab: Vec<[[u32; 256]; 4]> = perms
            .iter()
            .map(|p| {
                let mut t = [[0u32; 256]; 4];
                for (chunk, row) in t.iter_mut().enumerate() {
                    for (byte, slot) in row.iter_mut().enumerate() {
                        for b in 0..8 {
                            let f = (chunk * 8 + b) as u32;
                            if byte >> b & 1 == 1 && f >= 1 && f <= full {
                                *slot |= 1 << permute(f, p);
                            }
                        }
                    }
                }
                t
            })
            .collect();

        let rest_pos: Vec<usize> = {
            let mut pos = vec![usize::MAX; (full + 1) as usize];
            for (k, &f) in rest_faces.iter().enumerate() {
                pos[f as usize] = k;
            }
            pos
        };
        let chunks = rest_bits.div_ceil(8);
        let rest_tab: Vec<Vec<[u32; 256]>> = perms
            .iter()
            .map(|p| {
                (0..chunks)
                    .map(|chunk| {
                        let mut row = [0u32; 256];
                        for (byte, slot) in row.iter_mut().enumerate() {
                            for b in 0..8 {
                                let k = chunk * 8 + b;
                                if byte >> b & 1 == 1 && k < rest_bits {
                                    *slot |= 1 << rest_pos[permute(rest_faces[k], p) as usize];
                                }
                            }
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let mut rest_spread = vec![[0u32; 256]; chunks];
        let mut rest_union = vec![[0u32; 256]; chunks];
        for chunk in 0..chunks {
            for byte in 0..256usize {
                for b in 0..8 {
                    let k = chunk * 8 + b;
                    if byte >> b & 1 == 1 && k < rest_bits {
                        rest_spread[chunk][byte] |= 1 << rest_faces[k];
                        rest_union[chunk][byte] |= rest_faces[k];
                    }
                }
            }
        }

        let edge_count = edge_faces.len();
        let permute_graph = |g: u32, p: &[usize]| -> u32 {
            let mut out = 0;
            for (e, &f) in edge_faces.iter().enumerate() {
                if g >> e & 1 == 1 {
                    let img = permute(f, p);
                    out |= 1 << edge_faces.iter().position(|&x| x == img).expect("edges map to edges");
                }
            }
            out
        };
        let graphs = 1usize << edge_count;
        let mut rep_of = vec![0u32; graphs];
        for g in 0..graphs as u32 {
            rep_of[g as usize] = perms.iter().map(|p| permute_graph(g, p)).min().expect("perms nonempty");
        }
        let mut class_reps: Vec<u32> = rep_of.clone();
        class_reps.sort_unstable();
        class_reps.dedup();
        let mut graph_class = vec![0u16; graphs];
        let mut graph_to_rep = vec![Vec::new(); graphs];
        for g in 0..graphs {
            let rep = rep_of[g];
            graph_class[g] = class_reps.binary_search(&rep).expect("rep listed") as u16;
            graph_to_rep[g] = (0..perms.len())
                .filter(|&k| permute_graph(g as u32, &perms[k]) == rep)
                .map(|k| k as u8)
                .collect();
        }
        let edge_word = |g: u32| -> u32 {
            (0..edge_count).filter(|e| g >> e & 1 == 1).fold(0, |a, e| a | 1 << edge_faces[e])
        };
        let edge_union = |g: u32| -> u32 {
            (0..edge_count).filter(|e| g >> e & 1 == 1).fold(0, |a, e| a | edge_faces[e])
        };
        let class_word = class_reps.iter().map(|&g| edge_word(g)).collect();
        let class_union = class_reps.iter().map(|&g| edge_union(g)).collect();

        let face_word = |pred: &dyn Fn(u32) -> bool| -> u32 {
            (1..=full).filter(|&f| pred(f)).fold(0, |a, f| a | 1 << f)
        };
        let mut separators = Vec::new();
        for i in 0..mu {
            for j in 0..mu {
                if i < j {
                    let a = face_word(&|f| f >> i & 1 == 1 && f >> j & 1 == 0);
                    let b = face_word(&|f| f >> j & 1 == 1 && f >> i & 1 == 0);
                    separators.push((a, b));
                }
            }
        }
        let meets = (0..=full).map(|r| face_word(&|f| f & r != 0)).collect();
        let contains = (0..mu).map(|v| face_word(&|f| f >> v & 1 == 1)).collect();

        Self {
            mu,
            full,
            edge_faces,
            rest_faces,
            rest_bits,
            perms,
            word_tab,
            rest_tab,
            rest_spread,
            rest_union,
            graph_class,
            graph_to_rep,
            class_reps,
            class_word,
            class_union,
            separators,
            meets,
            contains,
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn full(&self) -> u32 {
        self.full
    }

    pub fn rest_bits(&self) -> usize {
        self.rest_bits
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    /// Number of search indices.
    pub fn size(&self) -> u64 {
        (self.class_reps.len() as u64) << self.rest_bits
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn contains_word(&self, v: usize) -> u32 {
        self.contains[v]
    }

    fn spread(&self, r: u32) -> u32 {
        let mut w = 0;
        for (chunk, t) in self.rest_spread.iter().enumerate() {
            w |= t[(r >> (8 * chunk) & 0xff) as usize];
        }
        w
    }

    fn residual_union(&self, r: u32) -> u32 {
        let mut u = 0;
        for (chunk, t) in self.rest_union.iter().enumerate() {
            u |= t[(r >> (8 * chunk) & 0xff) as usize];
        }
        u
    }

    fn apply_rest(&self, perm: usize, r: u32) -> u32 {
        let mut out = 0;
        for (chunk, t) in self.rest_tab[perm].iter().enumerate() {
            out |= t[(r >> (8 * chunk) & 0xff) as usize];
        }
        out
    }

    /// Image of a word under the `perm`-th permutation.
    pub fn apply_word(&self, perm: usize, w: u32) -> u32 {
        let t = &self.word_tab[perm];
        t[0][(w & 0xff) as usize]
            | t[1][(w >> 8 & 0xff) as usize]
            | t[2][(w >> 16 & 0xff) as usize]
            | t[3][(w >> 24) as usize]
    }

    pub fn index_to_word(&self, idx: u32) -> u32 {
        let class = (idx >> self.rest_bits) as usize;
        let r = idx & ((1u32 << self.rest_bits) - 1);
        self.class_word[class] | self.spread(r)
    }

    fn split(&self, w: u32) -> (u32, u32) {
        let mut g = 0;
        for (e, &f) in self.edge_faces.iter().enumerate() {
            g |= (w >> f & 1) << e;
        }
        let mut r = 0;
        for (k, &f) in self.rest_faces.iter().enumerate() {
            r |= (w >> f & 1) << k;
        }
        (g, r)
    }

    /// Search index of the class representative isomorphic to `w`.
    pub fn canonical_index(&self, w: u32) -> u32 {
        let (g, r) = self.split(w);
        let class = self.graph_class[g as usize] as u32;
        let best = self.graph_to_rep[g as usize]
            .iter()
            .map(|&p| self.apply_rest(p as usize, r))
            .min()
            .expect("some permutation reaches the representative");
        class << self.rest_bits | best
    }

    pub fn canonical_word(&self, w: u32) -> u32 {
        self.index_to_word(self.canonical_index(w))
    }

    pub fn is_connected_word(&self, w: u32) -> bool {
        let mut reached = 1u32;
        loop {
            let touching = w & self.meets[reached as usize];
            let mut next = reached;
            for v in 0..self.mu {
                if touching & self.contains[v] != 0 {
                    next |= 1 << v;
                }
            }
            if next == reached {
                return reached == self.full;
            }
            reached = next;
        }
    }

    pub fn is_separable_word(&self, w: u32) -> bool {
        self.separators.iter().all(|&(a, b)| w & a != 0 && w & b != 0)
    }

    pub fn covers(&self, w: u32) -> bool {
        let mut u = 0;
        for f in 1..=self.full {
            if w >> f & 1 == 1 {
                u |= f;
            }
        }
        u == self.full
    }

    /// Step 1 test for the search index `idx`: returns the representative
    /// word when it is a canonical connected separable hypergraph.
    #[inline]
    pub fn step1(&self, idx: u32) -> Option<u32> {
        let class = (idx >> self.rest_bits) as usize;
        let r = idx & ((1u32 << self.rest_bits) - 1);
        if self.class_union[class] | self.residual_union(r) != self.full {
            return None;
        }
        let w = self.class_word[class] | self.spread(r);
        if !self.is_separable_word(w) || !self.is_connected_word(w) {
            return None;
        }
        let rep = self.class_reps[class] as usize;
        for &p in &self.graph_to_rep[rep] {
            if self.apply_rest(p as usize, r) < r {
                return None;
            }
        }
        Some(w)
    }

    pub fn word_to_hypergraph(&self, w: u32) -> Hypergraph {
        Hypergraph::new(self.mu, (1..=self.full).filter(|f| w >> f & 1 == 1)).expect("valid word")
    }

    pub fn hypergraph_to_word(h: &Hypergraph) -> u32 {
        assert!(h.mu() <= MAX_ENUM_MU);
        h.faces().iter().fold(0, |a, &f| a | 1 << f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn graph_classes_on_five_vertices() {
        // Non-isomorphic simple graphs on 4 and 5 vertices.
        assert_eq!(SearchSpace::new(4).class_count(), 11);
        assert_eq!(SearchSpace::new(5).class_count(), 34);
    }

    #[test]
    fn canonical_index_is_a_class_invariant() {
        let s = SearchSpace::new(4);
        let mut seen = HashSet::new();
        for w in (0u32..1 << 15).map(|x| x << 1) {
            let idx = s.canonical_index(w);
            for p in 0..s.perms().len() {
                assert_eq!(s.canonical_index(s.apply_word(p, w)), idx);
            }
            assert_eq!(s.canonical_index(s.index_to_word(idx)), idx);
            seen.insert(idx);
        }
        let generic: HashSet<_> = (0u32..1 << 15)
            .map(|x| {
                let faces: Vec<u32> = (1..16).filter(|f| x >> (f - 1) & 1 == 1).collect();
                canonical_faces(4, &faces)
            })
            .collect();
        assert_eq!(seen.len(), generic.len());
    }

    fn canonical_faces(mu: usize, faces: &[u32]) -> Vec<u32> {
        all_permutations(mu)
            .iter()
            .map(|p| {
                let mut v: Vec<u32> = faces
                    .iter()
                    .map(|&f| (0..mu).filter(|b| f >> b & 1 == 1).fold(0, |a, b| a | 1 << p[b]))
                    .collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap()
    }
}
