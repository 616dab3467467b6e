//! The lcm lattice and reduced homology of its open lower intervals.

use std::collections::{HashMap, HashSet};

use super::linalg::sparse_rank;
use super::Field;
use crate::ideal::SquarefreeMonomial;

/// Distinct lcms of non-empty generator subsets. The bottom element (the
/// empty lcm, 1) is implicit.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    gens: Vec<SquarefreeMonomial>,
    elements: Vec<SquarefreeMonomial>,
}

/// Largest vertex set either homology route will enumerate subsets of.
const MAX_SUBSET_VERTICES: usize = 24;

impl LcmLattice {
    pub fn new(gens: &[SquarefreeMonomial]) -> Self {
        let mut seen: HashSet<SquarefreeMonomial> = gens.iter().cloned().collect();
        let mut frontier: Vec<SquarefreeMonomial> = seen.iter().cloned().collect();
        while let Some(m) = frontier.pop() {
            for g in gens {
                let j = m.lcm(g);
                if seen.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut elements: Vec<SquarefreeMonomial> = seen.into_iter().collect();
        elements.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        Self { gens: gens.to_vec(), elements }
    }

    pub fn elements(&self) -> &[SquarefreeMonomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements strictly below `self.elements[k]`, as indices (a linear extension).
    pub fn below(&self, k: usize) -> Vec<usize> {
        let top = &self.elements[k];
        (0..k).filter(|&i| self.elements[i] != *top && self.elements[i].divides(top)).collect()
    }

    /// Reduced Betti numbers dim H̃_d of the open interval (0̂, m_k), indexed
    /// by d + 1 (so entry 0 is H̃_{-1}).
    ///
    /// The interval is homotopy equivalent to its crosscut complex: sets of
    /// generators dividing m whose lcm is not m. When m has fewer variables
    /// than generators below it, the same numbers come from the Stanley-Reisner
    /// complex restricted to supp m, shifted by |m|.
    pub fn interval_homology(&self, k: usize, field: Field) -> Vec<usize> {
        let m = &self.elements[k];
        let atoms: Vec<&SquarefreeMonomial> = self.gens.iter().filter(|g| g.divides(m)).collect();
        let support: Vec<usize> = m.iter().collect();
        assert!(
            atoms.len().min(support.len()) <= MAX_SUBSET_VERTICES,
            "lcm lattice element with {} generators and {} variables is out of reach",
            atoms.len(),
            support.len()
        );
        if atoms.len() <= support.len() {
            let faces = (0u32..1 << atoms.len()).filter(|&s| {
                let l = bits(s).fold(SquarefreeMonomial::one(), |acc, a| acc.lcm(atoms[a]));
                l != *m
            });
            return reduced_homology(&cells_from_masks(faces), field);
        }
        // Generators as masks over the local variable order.
        let local: Vec<u32> = atoms
            .iter()
            .map(|g| g.iter().fold(0, |acc, v| acc | 1 << support.binary_search(&v).unwrap()))
            .collect();
        let faces = (0u32..1 << support.len()).filter(|&s| local.iter().all(|&g| g & !s != 0));
        let h = reduced_homology(&cells_from_masks(faces), field);
        // β_{i,m} = H̃_{|m|-i-1}(Δ|m) = H̃_{i-2}(crosscut): entry e+1 moves to |m|-e-2.
        let n = support.len();
        let mut out = vec![0; n];
        for (e1, &b) in h.iter().enumerate() {
            if b > 0 {
                out[n - e1 - 1] = b;
            }
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

fn bits(s: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

fn cells_from_masks(faces: impl Iterator<Item = u32>) -> Vec<Vec<Vec<usize>>> {
    let mut cells: Vec<Vec<Vec<usize>>> = Vec::new();
    for f in faces {
        let k = f.count_ones() as usize;
        if cells.len() <= k {
            cells.resize(k + 1, Vec::new());
        }
        cells[k].push(bits(f).collect());
    }
    cells
}

/// Augmented chain complex homology. `cells[k]` lists the (k-1)-dimensional
/// faces as sorted vertex lists.
pub fn reduced_homology(cells: &[Vec<Vec<usize>>], field: Field) -> Vec<usize> {
    let mut ranks = vec![0usize; cells.len() + 1];
    for k in 1..cells.len() {
        let index: HashMap<&[usize], usize> =
            cells[k - 1].iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let mut face = Vec::with_capacity(k);
        let rows: Vec<Vec<(usize, i64)>> = cells[k]
            .iter()
            .map(|c| {
                let mut row: Vec<(usize, i64)> = (0..c.len())
                    .map(|drop| {
                        face.clear();
                        face.extend(c.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v));
                        (index[face.as_slice()], if drop % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        ranks[k] = sparse_rank(&rows, cells[k - 1].len(), field);
    }
    (0..cells.len())
        .map(|k| cells[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}
