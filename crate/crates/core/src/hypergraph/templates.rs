//! The 24 connected hypergraphs on four vertices with dim ≤ 1, height 2 and
//! W ≠ ∅, all drawn inside one frame.
//!
//! Frame vertices are labeled 1 = top left, 2 = bottom left, 3 = bottom
//! right, 4 = top right. Slots: i1 = {1,2}, i2 = {2,3}, i3 = {3,4},
//! i4 = {1,4}, i5 = {1,3}, i6 = {2,4}, and j_u = {u} for u = 2, 3, 4.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{for_each_permutation, Hypergraph};
use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, SquarefreeMonomial};

/// Frame edge of each i-slot, 1-based.
pub const SLOT_EDGES: [(usize, usize); 6] = [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4)];

#[derive(Debug, PartialEq, Eq)]
pub struct Template {
    pub id: usize,
    /// Which i-slots carry an edge.
    pub slots: [bool; 6],
    /// Filled vertices among 2, 3, 4 (vertex 1 is never filled).
    pub filled: [bool; 3],
}

const C: [bool; 6] = [true, true, true, true, false, false];
const C13: [bool; 6] = [true, true, true, true, true, false];
const C24: [bool; 6] = [true, true, true, true, false, true];
const CB: [bool; 6] = [true, true, true, true, true, true];
const T18: [bool; 6] = [true, false, true, true, true, false];
const T21: [bool; 6] = [true, true, true, false, true, false];
const PATH: [bool; 6] = [true, false, true, true, false, false];

const fn t(id: usize, slots: [bool; 6], b2: bool, b3: bool, b4: bool) -> Template {
    Template { id, slots, filled: [b2, b3, b4] }
}

pub static TEMPLATES: [Template; 24] = [
    t(1, C, false, false, false),
    t(2, C, false, false, true),
    t(3, C, false, true, true),
    t(4, C, true, false, true),
    t(5, C, true, true, true),
    t(6, C13, false, false, false),
    t(7, C13, false, false, true),
    t(8, C13, false, true, false),
    t(9, C13, false, true, true),
    t(10, C13, true, false, true),
    t(11, C13, true, true, true),
    t(12, C24, true, false, true),
    t(13, C24, true, true, true),
    t(14, CB, false, false, false),
    t(15, CB, false, false, true),
    t(16, CB, false, true, true),
    t(17, CB, true, true, true),
    t(18, T18, true, false, false),
    t(19, T18, true, true, false),
    t(20, T18, true, true, true),
    t(21, T21, false, true, true),
    t(22, T21, true, true, true),
    t(23, PATH, true, true, false),
    t(24, PATH, true, true, true),
];

impl Template {
    pub fn get(id: usize) -> Result<&'static Template> {
        TEMPLATES
            .get(id.wrapping_sub(1))
            .ok_or_else(|| Error::Precondition(format!("no template H{id}")))
    }

    /// Faces as masks over frame vertices (bit k-1 for frame vertex k).
    pub fn faces(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (s, &(a, b)) in SLOT_EDGES.iter().enumerate() {
            if self.slots[s] {
                out.push(1 << (a - 1) | 1 << (b - 1));
            }
        }
        for (k, &f) in self.filled.iter().enumerate() {
            if f {
                out.push(1 << (k + 1));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph::new(4, self.faces()).expect("templates are valid hypergraphs")
    }

    /// Filled frame vertices as a 1-based list.
    pub fn b_set(&self) -> Vec<usize> {
        (0..3).filter(|&k| self.filled[k]).map(|k| k + 2).collect()
    }
}

/// Multiplicities of the frame slots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FrameParams {
    pub i: [usize; 6],
    /// j2, j3, j4.
    pub j: [usize; 3],
}

impl FrameParams {
    pub fn new(i: [usize; 6], j: [usize; 3]) -> Self {
        Self { i, j }
    }

    /// N = Σ i_s + Σ j_u.
    pub fn n(&self) -> usize {
        self.i.iter().sum::<usize>() + self.j.iter().sum::<usize>()
    }

    /// Every template slot is occupied and every other slot is empty.
    pub fn check(&self, t: &Template) -> Result<()> {
        for s in 0..6 {
            if t.slots[s] != (self.i[s] > 0) {
                return Err(Error::InconsistentParams {
                    template: t.id,
                    reason: format!("i{} = {} conflicts with the template", s + 1, self.i[s]),
                });
            }
        }
        for u in 0..3 {
            if t.filled[u] != (self.j[u] > 0) {
                return Err(Error::InconsistentParams {
                    template: t.id,
                    reason: format!("j{} = {} conflicts with the template", u + 2, self.j[u]),
                });
            }
        }
        Ok(())
    }

    /// Variable names in frame order: x{s}_{t} for the i-slots, then y{u}_{t}.
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.n());
        for s in 0..6 {
            for t in 1..=self.i[s] {
                names.push(format!("x{}_{}", s + 1, t));
            }
        }
        for u in 0..3 {
            for t in 1..=self.j[u] {
                names.push(format!("y{}_{}", u + 2, t));
            }
        }
        names
    }

    /// Variable indices of i-slot `s` (0-based slot) in `variable_names` order.
    pub fn slot_vars(&self, s: usize) -> std::ops::Range<usize> {
        let start: usize = self.i[..s].iter().sum();
        start..start + self.i[s]
    }

    /// Variable indices of the singleton slot at frame vertex `u` ∈ {2,3,4}.
    pub fn single_vars(&self, u: usize) -> std::ops::Range<usize> {
        let start = self.i.iter().sum::<usize>() + self.j[..u - 2].iter().sum::<usize>();
        start..start + self.j[u - 2]
    }

    /// Variable set of the prime attached to frame vertex `k` (1-based):
    /// all slots whose face contains k.
    pub fn prime(&self, k: usize) -> SquarefreeMonomial {
        let mut m = SquarefreeMonomial::one();
        for (s, &(a, b)) in SLOT_EDGES.iter().enumerate() {
            if a == k || b == k {
                for v in self.slot_vars(s) {
                    m.insert(v);
                }
            }
        }
        if k >= 2 {
            for v in self.single_vars(k) {
                m.insert(v);
            }
        }
        m
    }

    /// I = P1 ∩ P2 ∩ P3 ∩ P4.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        let primes: Vec<SquarefreeMonomial> = (1..=4).map(|k| self.prime(k)).collect();
        MonomialIdeal::from_primes(self.variable_names(), &primes)
    }

    /// I*, generated by the four prime monomials.
    pub fn dual_ideal(&self) -> Result<MonomialIdeal> {
        let primes: Vec<SquarefreeMonomial> = (1..=4).map(|k| self.prime(k)).collect();
        MonomialIdeal::new(self.variable_names(), primes)
    }
}

/// A template together with a vertex relabeling of the frame onto H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateMatch {
    pub template: usize,
    /// `labeling[k]` is the H vertex (0-based) placed at frame vertex k+1.
    pub labeling: [usize; 4],
}

impl TemplateMatch {
    pub fn template(&self) -> &'static Template {
        Template::get(self.template).expect("matched ids are valid")
    }

    fn frame_face(&self, a: usize, b: usize) -> u32 {
        1 << self.labeling[a - 1] | 1 << self.labeling[b - 1]
    }

    /// Count defining variables of each slot face.
    pub fn params(&self, by_face: &BTreeMap<u32, Vec<usize>>) -> FrameParams {
        let count = |f: u32| by_face.get(&f).map_or(0, |v| v.len());
        let mut p = FrameParams::default();
        for (s, &(a, b)) in SLOT_EDGES.iter().enumerate() {
            p.i[s] = count(self.frame_face(a, b));
        }
        for u in 2..=4 {
            p.j[u - 2] = count(1 << self.labeling[u - 1]);
        }
        p
    }

    /// Defining variables of each slot face, in frame order.
    pub fn slot_variables(&self, by_face: &BTreeMap<u32, Vec<usize>>) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let get = |f: u32| by_face.get(&f).cloned().unwrap_or_default();
        let i = SLOT_EDGES.iter().map(|&(a, b)| get(self.frame_face(a, b))).collect();
        let j = (2..=4).map(|u| get(1 << self.labeling[u - 1])).collect();
        (i, j)
    }
}

fn check_hypotheses(h: &Hypergraph) -> Result<()> {
    if h.mu() != 4 || h.dim() > 1 || !h.is_connected() || h.w_mask() == 0 {
        return Err(Error::NotClassified);
    }
    Ok(())
}

/// Every (template, labeling) reproducing H, ordered by template id and then
/// lexicographically by labeling.
pub fn match_template_all(h: &Hypergraph) -> Result<Vec<TemplateMatch>> {
    check_hypotheses(h)?;
    let mut out = Vec::new();
    for t in TEMPLATES.iter() {
        let faces = t.faces();
        if faces.len() != h.len() {
            continue;
        }
        for_each_permutation(4, |p| {
            let mut mapped: Vec<u32> = faces.iter().map(|&f| super::permute_mask(f, p)).collect();
            mapped.sort_unstable();
            if mapped == h.faces() {
                out.push(TemplateMatch { template: t.id, labeling: [p[0], p[1], p[2], p[3]] });
            }
        });
    }
    if out.is_empty() {
        return Err(Error::NotClassified);
    }
    Ok(out)
}

pub fn match_template(h: &Hypergraph) -> Result<TemplateMatch> {
    Ok(match_template_all(h)?.remove(0))
}
