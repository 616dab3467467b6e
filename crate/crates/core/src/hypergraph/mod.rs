//! Hypergraphs on the generators of a squarefree monomial ideal.
//!
//! Vertices are `0..mu` internally and printed 1-based. Faces are bitmasks.

mod bipartite;
pub mod templates;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use bipartite::CorrespondingGraph;
pub use templates::{match_template, match_template_all, FrameParams, Template, TemplateMatch, TEMPLATES};

use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, SquarefreeMonomial};

pub const MAX_MU: usize = 32;
pub const MAX_CANONICAL_MU: usize = 8;

fn full_mask(mu: usize) -> u32 {
    if mu == 32 {
        u32::MAX
    } else {
        (1u32 << mu) - 1
    }
}

/// A set of distinct non-empty faces covering `[mu]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    mu: usize,
    faces: Vec<u32>,
}

/// Which variables realize each face of H(I).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningMap {
    pub by_face: BTreeMap<u32, Vec<usize>>,
    pub by_variable: BTreeMap<usize, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub b: Vec<usize>,
    pub w: Vec<usize>,
    pub dim: usize,
    pub connected: bool,
    pub separable: bool,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    mu: usize,
    faces: Vec<Vec<usize>>,
}

/// Canonical representative of an isomorphism class: the face list that is
/// lexicographically least among all vertex relabelings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub mu: usize,
    pub faces: Vec<u32>,
}

impl Hypergraph {
    pub fn new(mu: usize, faces: impl IntoIterator<Item = u32>) -> Result<Self> {
        if mu == 0 || mu > MAX_MU {
            return Err(Error::InvalidHypergraph(format!("vertex count {mu} out of range 1..=32")));
        }
        let full = full_mask(mu);
        let mut faces: Vec<u32> = faces.into_iter().collect();
        faces.sort_unstable();
        for w in faces.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidHypergraph(format!("duplicate face {}", face_string(w[0]))));
            }
        }
        let mut cover = 0;
        for &f in &faces {
            if f == 0 || f & !full != 0 {
                return Err(Error::InvalidHypergraph(format!("face {} is empty or out of range", face_string(f))));
            }
            cover |= f;
        }
        if cover != full {
            return Err(Error::InvalidHypergraph("faces do not cover every vertex".into()));
        }
        Ok(Self { mu, faces })
    }

    /// Build from 1-based vertex lists.
    pub fn from_lists(mu: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(faces.len());
        for f in faces {
            let mut m = 0u32;
            for &v in f {
                if v == 0 || v > mu {
                    return Err(Error::InvalidHypergraph(format!("vertex {v} out of range")));
                }
                m |= 1 << (v - 1);
            }
            masks.push(m);
        }
        Self::new(mu, masks)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: HypergraphJson = serde_json::from_str(text)?;
        Self::from_lists(doc.mu, &doc.faces)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = HypergraphJson {
            mu: self.mu,
            faces: self.faces.iter().map(|&f| mask_vertices(f).map(|v| v + 1).collect()).collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: u32) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// B(H): vertices that are singleton faces.
    pub fn b_mask(&self) -> u32 {
        self.faces.iter().filter(|f| f.count_ones() == 1).fold(0, |a, f| a | f)
    }

    /// W(H) = V ∖ B(H).
    pub fn w_mask(&self) -> u32 {
        full_mask(self.mu) & !self.b_mask()
    }

    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(1) - 1
    }

    /// H^i: faces of dimension i.
    pub fn level(&self, i: usize) -> Vec<u32> {
        self.faces.iter().copied().filter(|f| f.count_ones() as usize == i + 1).collect()
    }

    /// H_U: faces contained in U.
    pub fn restrict(&self, u: u32) -> Vec<u32> {
        self.faces.iter().copied().filter(|f| f & !u == 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        let full = full_mask(self.mu);
        let mut reached = 1u32;
        loop {
            let next = self.faces.iter().filter(|&&f| f & reached != 0).fold(reached, |a, f| a | f);
            if next == reached {
                return reached == full;
            }
            reached = next;
        }
    }

    /// Every ordered pair of distinct vertices is split by some face.
    pub fn is_separable(&self) -> bool {
        (0..self.mu).all(|i| {
            (0..self.mu).all(|j| i == j || self.faces.iter().any(|f| f >> i & 1 == 1 && f >> j & 1 == 0))
        })
    }

    pub fn structure(&self) -> Structure {
        let b = self.b_mask();
        let w = self.w_mask();
        Structure {
            b: mask_vertices(b).map(|v| v + 1).collect(),
            w: mask_vertices(w).map(|v| v + 1).collect(),
            dim: self.dim(),
            connected: self.is_connected(),
            separable: self.is_separable(),
        }
    }

    /// Relabel vertices: vertex `v` goes to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let faces: Vec<u32> = self.faces.iter().map(|&f| permute_mask(f, perm)).collect();
        let mut faces = faces;
        faces.sort_unstable();
        Self { mu: self.mu, faces }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        assert!(self.mu <= MAX_CANONICAL_MU, "canonical form needs mu <= 8");
        let mut best: Option<Vec<u32>> = None;
        let mut scratch = Vec::with_capacity(self.faces.len());
        for_each_permutation(self.mu, |perm| {
            scratch.clear();
            scratch.extend(self.faces.iter().map(|&f| permute_mask(f, perm)));
            scratch.sort_unstable();
            if best.as_ref().is_none_or(|b| scratch < *b) {
                best = Some(scratch.clone());
            }
        });
        CanonicalForm { mu: self.mu, faces: best.unwrap_or_default() }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.mu == other.mu && self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// A vertex bijection σ with σ(F) ∈ other for every face F, if any.
    pub fn embed(&self, other: &Self) -> Option<Vec<usize>> {
        if self.mu != other.mu || self.len() > other.len() {
            return None;
        }
        let target: HashSet<u32> = other.faces.iter().copied().collect();
        // Faces become checkable once their highest vertex is assigned.
        let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); self.mu];
        for &f in &self.faces {
            by_top[31 - f.leading_zeros() as usize].push(f);
        }
        let mut sigma = vec![usize::MAX; self.mu];
        let mut used = 0u32;
        if embed_search(0, &by_top, &target, &mut sigma, &mut used) {
            Some(sigma)
        } else {
            None
        }
    }

    /// The reduced ideal I_H when every weight is 1; in general `weights[k]`
    /// fresh variables are attached to the k-th face.
    pub fn ideal_from(&self, weights: &[usize]) -> Result<MonomialIdeal> {
        if !self.is_separable() {
            return Err(Error::NotSeparable);
        }
        if weights.len() != self.faces.len() || weights.contains(&0) {
            return Err(Error::Precondition("one positive weight per face required".into()));
        }
        let mut vars = Vec::new();
        let mut gens = vec![SquarefreeMonomial::one(); self.mu];
        for (&f, &w) in self.faces.iter().zip(weights) {
            let base = face_name(f, self.mu);
            for t in 0..w {
                let name = if w == 1 { base.clone() } else { format!("{base}_{}", t + 1) };
                for v in mask_vertices(f) {
                    gens[v].insert(vars.len());
                }
                vars.push(name);
            }
        }
        let ideal = MonomialIdeal::new(vars, gens.clone())?;
        debug_assert_eq!(ideal.mu(), self.mu);
        Ok(ideal)
    }

    pub fn reduced_ideal(&self) -> Result<MonomialIdeal> {
        self.ideal_from(&vec![1; self.faces.len()])
    }
}

fn embed_search(
    v: usize,
    by_top: &[Vec<u32>],
    target: &HashSet<u32>,
    sigma: &mut [usize],
    used: &mut u32,
) -> bool {
    if v == sigma.len() {
        return true;
    }
    for img in 0..sigma.len() {
        if *used >> img & 1 == 1 {
            continue;
        }
        sigma[v] = img;
        let ok = by_top[v].iter().all(|&f| target.contains(&permute_mask(f, sigma)));
        if ok {
            *used |= 1 << img;
            if embed_search(v + 1, by_top, target, sigma, used) {
                return true;
            }
            *used &= !(1 << img);
        }
    }
    sigma[v] = usize::MAX;
    false
}

/// Vertex indices set in `mask`, ascending.
pub fn mask_vertices(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    mask_vertices(mask).fold(0, |acc, v| acc | 1 << perm[v])
}

fn face_string(f: u32) -> String {
    let vs: Vec<String> = mask_vertices(f).map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", vs.join(","))
}

fn face_name(f: u32, mu: usize) -> String {
    let vs: Vec<String> = mask_vertices(f).map(|v| (v + 1).to_string()).collect();
    if mu <= 9 {
        format!("x{}", vs.concat())
    } else {
        format!("x{}", vs.join("_"))
    }
}

/// Call `f` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| out.push(p.to_vec()));
    out
}

/// H(I) together with its defining variables.
pub fn hypergraph_of(ideal: &MonomialIdeal) -> Result<(Hypergraph, DefiningMap)> {
    let mu = ideal.mu();
    if mu > MAX_MU {
        return Err(Error::Precondition(format!("hypergraphs need mu <= {MAX_MU}")));
    }
    let mut pattern: BTreeMap<usize, u32> = BTreeMap::new();
    for (j, g) in ideal.gens().iter().enumerate() {
        for x in g.iter() {
            *pattern.entry(x).or_insert(0) |= 1 << j;
        }
    }
    let mut by_face: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (&x, &f) in &pattern {
        by_face.entry(f).or_default().push(x);
    }
    let h = Hypergraph::new(mu, by_face.keys().copied())?;
    Ok((h, DefiningMap { by_face, by_variable: pattern }))
}

impl CanonicalForm {
    /// Lowercase hex of the face-mask set: bit F is set iff face F is present.
    pub fn to_hex(&self) -> String {
        encode_face_set(self.mu, &self.faces)
    }

    pub fn from_hex(mu: usize, hex: &str) -> Result<Self> {
        let faces = decode_face_set(mu, hex)?;
        Ok(Self { mu, faces })
    }

    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph { mu: self.mu, faces: self.faces.clone() }
    }
}

pub fn encode_face_set(mu: usize, faces: &[u32]) -> String {
    let bits = 1usize << mu;
    let digits = bits.div_ceil(4).max(1);
    let mut nibbles = vec![0u8; digits];
    for &f in faces {
        let f = f as usize;
        nibbles[digits - 1 - f / 4] |= 1 << (f % 4);
    }
    nibbles.iter().map(|n| char::from_digit(*n as u32, 16).expect("nibble")).collect()
}

pub fn decode_face_set(mu: usize, hex: &str) -> Result<Vec<u32>> {
    let hex = hex.trim();
    let digits = (1usize << mu).div_ceil(4).max(1);
    if mu > MAX_CANONICAL_MU || hex.len() != digits {
        return Err(Error::InvalidHypergraph(format!("expected {digits} hex digits for mu = {mu}")));
    }
    let mut faces = Vec::new();
    for (k, c) in hex.chars().enumerate() {
        let n = c
            .to_digit(16)
            .ok_or_else(|| Error::InvalidHypergraph(format!("bad hex digit `{c}`")))?;
        for b in 0..4 {
            if n >> b & 1 == 1 {
                faces.push(((digits - 1 - k) * 4 + b) as u32);
            }
        }
    }
    faces.sort_unstable();
    Ok(faces)
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<String> = self.faces.iter().map(|&m| face_string(m)).collect();
        write!(f, "[{}]", faces.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(mu: usize, faces: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_lists(mu, &faces.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hypergraph_of_examples() {
        let i = MonomialIdeal::parse_list("x1*x2, x1*x3").unwrap();
        let (h, d) = hypergraph_of(&i).unwrap();
        assert_eq!(h, hg(2, &[&[1, 2], &[1], &[2]]));
        assert_eq!(d.by_face[&0b11], vec![i.var_index("x1").unwrap()]);
        let (h, _) = hypergraph_of(&MonomialIdeal::parse_list("x1*x2*x3").unwrap()).unwrap();
        assert_eq!(h, hg(1, &[&[1]]));
    }

    #[test]
    fn structure_examples() {
        let path = hypergraph_of(&MonomialIdeal::parse_list("x1*x2, x2*x3, x3*x4").unwrap()).unwrap().0;
        let s = path.structure();
        assert_eq!((s.b.clone(), s.w.clone()), (vec![1, 3], vec![2]));
        assert!(s.connected && s.separable);
        let tri = hypergraph_of(&MonomialIdeal::parse_list("x1*x2, x2*x3, x1*x3").unwrap()).unwrap().0;
        let s = tri.structure();
        assert!(s.b.is_empty());
        assert_eq!(s.w, vec![1, 2, 3]);
        assert!(!hg(2, &[&[1], &[2]]).is_connected());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            hg(2, &[&[1], &[2], &[1, 2]]).canonical_form(),
            hg(2, &[&[2], &[1], &[1, 2]]).canonical_form()
        );
        let a = hg(2, &[&[1], &[1, 2]]).canonical_form();
        assert_eq!(a, hg(2, &[&[2], &[1, 2]]).canonical_form());
        assert_ne!(a, hg(2, &[&[1], &[2]]).canonical_form());
        let h = hg(4, &[&[1, 2], &[2, 3], &[3, 4], &[4], &[1, 3]]);
        for p in all_permutations(4) {
            assert_eq!(h.permuted(&p).canonical_form(), h.canonical_form());
        }
    }

    #[test]
    fn hex_round_trip() {
        let c = hg(3, &[&[1], &[2, 3], &[1, 2, 3]]).canonical_form();
        let hex = c.to_hex();
        assert_eq!(hex.len(), 2);
        assert_eq!(CanonicalForm::from_hex(3, &hex).unwrap(), c);
    }

    #[test]
    fn embed_examples() {
        let small = hg(2, &[&[1], &[2]]);
        let big = hg(2, &[&[1], &[2], &[1, 2]]);
        assert_eq!(big.embed(&big), Some(vec![0, 1]));
        assert!(small.embed(&big).is_some());
        assert!(big.embed(&small).is_none());
        let a = hg(3, &[&[1, 2], &[3]]);
        let b = hg(3, &[&[2, 3], &[1], &[2]]);
        let s = a.embed(&b).unwrap();
        assert!(a.faces().iter().all(|&f| b.contains(permute_mask(f, &s))));
    }

    #[test]
    fn ideal_from_examples() {
        let h = hg(2, &[&[1], &[2], &[1, 2]]);
        let i = h.reduced_ideal().unwrap();
        assert!(i.same_ideal(&MonomialIdeal::parse_list("x1*x12, x2*x12").unwrap()));
        assert_eq!(hypergraph_of(&i).unwrap().0, h);
        let i = h.ideal_from(&[2, 1, 3]).unwrap();
        assert_eq!(i.support().degree(), 6);
        assert_eq!(hypergraph_of(&i).unwrap().0, h);
        assert!(matches!(hg(2, &[&[1], &[1, 2]]).reduced_ideal(), Err(Error::NotSeparable)));
    }

    #[test]
    fn invalid_hypergraphs() {
        assert!(Hypergraph::new(3, [0b011]).is_err());
        assert!(Hypergraph::new(2, [0b01, 0b01, 0b10]).is_err());
        assert!(Hypergraph::new(2, [0b100, 0b11]).is_err());
    }
}
