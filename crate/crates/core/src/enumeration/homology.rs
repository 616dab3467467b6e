//! Fast height and projective dimension for reduced ideals I_H, μ ≤ 5.
//!
//! The lcm of a generator subset T of I_H is the set of faces meeting T, so
//! β_{i,m}(S/I_H) is the reduced homology in degree i−2 of the Taylor strand
//! {T : lcm(T) strictly below m}, a simplicial complex on at most five
//! vertices. All such complexes are tabulated once. Complexes on at most
//! five vertices have torsion-free homology, so the tabulated 𝔽₂ values hold
//! over every field.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::space::SearchSpace;
use crate::resolution::{reduced_homology, Field};

const SLOTS: usize = 1 << 14;

/// Top degree of non-vanishing reduced homology for every simplicial
/// complex on vertices ⊆ {0..4}, keyed by its face set (bit T for face T).
pub struct ComplexTable {
    keys: Vec<u32>,
    values: Vec<i8>,
    count: usize,
}

const ACYCLIC: i8 = -2;

fn slot(key: u32) -> usize {
    (key.wrapping_mul(0x9E37_79B1) >> 18) as usize
}

/// Faces of a complex mask grouped by size, as vertex lists.
pub fn complex_cells(mask: u32) -> Vec<Vec<Vec<usize>>> {
    let mut cells: Vec<Vec<Vec<usize>>> = vec![Vec::new(); 6];
    for t in 0..32u32 {
        if mask >> t & 1 == 1 {
            let verts: Vec<usize> = (0..5).filter(|v| t >> v & 1 == 1).collect();
            cells[verts.len()].push(verts);
        }
    }
    while cells.last().is_some_and(|c| c.is_empty()) {
        cells.pop();
    }
    cells
}

/// All downward-closed face sets containing the empty face.
pub fn all_complexes() -> Vec<u32> {
    let mut seen: HashSet<u32> = HashSet::new();
    let mut stack = vec![1u32];
    seen.insert(1);
    while let Some(c) = stack.pop() {
        for t in 1..32u32 {
            if c >> t & 1 == 1 {
                continue;
            }
            let closed = (0..5).filter(|v| t >> v & 1 == 1).all(|v| c >> (t & !(1 << v)) & 1 == 1);
            if closed {
                let next = c | 1 << t;
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    let mut out: Vec<u32> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

impl ComplexTable {
    fn build() -> Self {
        let mut table = Self { keys: vec![0; SLOTS], values: vec![0; SLOTS], count: 0 };
        for c in all_complexes() {
            let h = reduced_homology(&complex_cells(c), Field::F2);
            let top = h.iter().rposition(|&b| b > 0).map_or(ACYCLIC, |k| k as i8 - 1);
            table.insert(c, top);
        }
        table
    }

    fn insert(&mut self, key: u32, value: i8) {
        let mut s = slot(key);
        while self.keys[s] != 0 {
            s = (s + 1) & (SLOTS - 1);
        }
        self.keys[s] = key;
        self.values[s] = value;
        self.count += 1;
    }

    pub fn global() -> &'static ComplexTable {
        static TABLE: OnceLock<ComplexTable> = OnceLock::new();
        TABLE.get_or_init(Self::build)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Top homology degree, or None for an acyclic complex.
    #[inline]
    pub fn top_degree(&self, key: u32) -> Option<i8> {
        let mut s = slot(key);
        loop {
            let k = self.keys[s];
            if k == key {
                let v = self.values[s];
                return (v != ACYCLIC).then_some(v);
            }
            assert!(k != 0, "face set {key:#x} is not a simplicial complex");
            s = (s + 1) & (SLOTS - 1);
        }
    }
}

/// Smallest number of faces covering every vertex.
pub fn height_word(space: &SearchSpace, w: u32) -> usize {
    let full = space.full();
    if w >> full & 1 == 1 {
        return 1;
    }
    let mut dist = [u8::MAX; 32];
    dist[0] = 0;
    let mut frontier = 1u32;
    for d in 1..=space.mu() as u8 {
        let mut next = 0u32;
        for s in 0..=full {
            if frontier >> s & 1 == 0 {
                continue;
            }
            let mut faces = w;
            while faces != 0 {
                let f = faces.trailing_zeros();
                faces &= faces - 1;
                let t = s | f;
                if dist[t as usize] == u8::MAX {
                    dist[t as usize] = d;
                    next |= 1 << t;
                }
            }
        }
        if dist[full as usize] != u8::MAX {
            return d as usize;
        }
        frontier = next;
    }
    unreachable!("faces of a covering word reach every vertex")
}

/// pd S/I_H from the Taylor strands.
pub fn pd_word(space: &SearchSpace, w: u32) -> usize {
    let table = ComplexTable::global();
    let mu = space.mu();
    let n = 1usize << mu;
    let mut stars = [0u32; 5];
    for (v, star) in stars.iter_mut().enumerate().take(mu) {
        *star = w & space.contains_word(v);
    }
    let mut lcm = [0u32; 32];
    for t in 1..n {
        lcm[t] = lcm[t & (t - 1)] | stars[t.trailing_zeros() as usize];
    }
    let mut pd = 0usize;
    let mut done: [u32; 32] = [0; 32];
    let mut done_len = 0;
    for t in 1..n {
        let m = lcm[t];
        if done[..done_len].contains(&m) {
            continue;
        }
        done[done_len] = m;
        done_len += 1;
        let mut cx = 1u32;
        for (s, &l) in lcm.iter().enumerate().take(n).skip(1) {
            if l & !m == 0 && l != m {
                cx |= 1 << s;
            }
        }
        if let Some(d) = table.top_degree(cx) {
            pd = pd.max((d + 2) as usize);
        }
    }
    pd
}
