//! SV systems for arithdeg-4 ideals laid out on the four-prime frame.
//!
//! Slot s (1..6) holds the variables x_{s,1..i_s} shared by the two primes
//! on its frame edge; y_{u,1..j_u} sit in P_u alone. The w-sequences
//! concatenate slot pools as below.

use std::collections::BTreeMap;

use super::sv::{diagonal_system, SvSystem};
use crate::hypergraph::templates::FrameParams;
use crate::ideal::SquarefreeMonomial;

/// Actual variable indices filling each frame slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVars {
    pub x: [Vec<usize>; 6],
    pub y: [Vec<usize>; 3],
}

impl FrameVars {
    /// The layout of `FrameParams::variable_names`.
    pub fn from_params(p: &FrameParams) -> Self {
        Self {
            x: std::array::from_fn(|s| p.slot_vars(s).collect()),
            y: std::array::from_fn(|u| p.single_vars(u + 2).collect()),
        }
    }

    pub fn from_slots(x: Vec<Vec<usize>>, y: Vec<Vec<usize>>) -> Self {
        Self {
            x: x.try_into().expect("six slots"),
            y: y.try_into().expect("three singleton slots"),
        }
    }

    pub fn params(&self) -> FrameParams {
        FrameParams::new(std::array::from_fn(|s| self.x[s].len()), std::array::from_fn(|u| self.y[u].len()))
    }

    /// x_{s,t}, 1-based.
    fn x(&self, s: usize, t: usize) -> usize {
        self.x[s - 1][t - 1]
    }

    fn y(&self, u: usize, t: usize) -> usize {
        self.y[u - 2][t - 1]
    }

    fn w1(&self, l: usize) -> usize {
        let i4 = self.x[3].len();
        if l <= i4 {
            self.x(4, l)
        } else {
            self.x(5, l - i4)
        }
    }

    fn w2(&self, l: usize) -> usize {
        let (i2, i6) = (self.x[1].len(), self.x[5].len());
        if l <= i2 {
            self.x(2, l)
        } else if l <= i2 + i6 {
            self.x(6, l - i2)
        } else {
            self.y(2, l - i2 - i6)
        }
    }

    fn w3(&self, l: usize) -> usize {
        let (i2, i5) = (self.x[1].len(), self.x[4].len());
        if l <= i2 {
            self.x(2, l)
        } else if l <= i2 + i5 {
            self.x(5, l - i2)
        } else {
            self.y(3, l - i2 - i5)
        }
    }

    fn w4(&self, l: usize) -> usize {
        let (i4, i6) = (self.x[3].len(), self.x[5].len());
        if l <= i4 {
            self.x(4, l)
        } else if l <= i4 + i6 {
            self.x(6, l - i4)
        } else {
            self.y(4, l - i4 - i6)
        }
    }
}

struct Levels(BTreeMap<usize, Vec<SquarefreeMonomial>>);

impl Levels {
    fn new() -> Self {
        Self(BTreeMap::new())
    }

    /// Place a monomial at level `sum - offset`; the index constraints of
    /// every family keep this non-negative.
    fn push(&mut self, sum: usize, offset: usize, vars: &[usize]) {
        debug_assert!(sum >= offset);
        self.0.entry(sum - offset).or_default().push(SquarefreeMonomial::from_indices(vars.iter().copied()));
    }

    fn into_system(self) -> SvSystem {
        let top = self.0.keys().next_back().map_or(0, |&k| k + 1);
        let mut groups = vec![Vec::new(); top];
        for (l, g) in self.0 {
            groups[l] = g;
        }
        SvSystem::new(groups)
    }
}

fn range(lo: usize, hi: usize) -> std::ops::RangeInclusive<usize> {
    lo..=hi
}

/// The eight families of the H17 construction, levels 0..max nonempty.
/// Empty groups are kept; call `compact` before use.
pub fn h17_system(v: &FrameVars) -> SvSystem {
    let p = v.params();
    let [i1, i2, i3, i4, i5, i6] = p.i;
    let [j2, j3, j4] = p.j;
    let mut lv = Levels::new();
    for l1 in range(1, i1) {
        for l3 in range(1, i3) {
            lv.push(l1 + l3, 2, &[v.x(1, l1), v.x(3, l3)]);
        }
    }
    for l1 in range(1, i1) {
        for l3 in range(1, i2 + i5 + j3) {
            for l4 in range(1, i4 + i6 + j4) {
                lv.push(l1 + l3 + l4 + i3, 3, &[v.x(1, l1), v.w3(l3), v.w4(l4)]);
            }
        }
    }
    for l3 in range(1, i3) {
        for l1 in range(1, i4 + i5) {
            for l2 in range(1, i2 + i6 + j2) {
                lv.push(l3 + l1 + l2 + i1, 3, &[v.x(3, l3), v.w1(l1), v.w2(l2)]);
            }
        }
    }
    for l2 in range(1, i2) {
        for l4 in range(1, i4) {
            lv.push(l2 + l4 + i1 + i3, 2, &[v.x(2, l2), v.x(4, l4)]);
        }
    }
    for l4 in range(1, i4) {
        for l2 in range(i2 + 1, i2 + i6 + j2) {
            for l3 in range(i2 + 1, i2 + i5 + j3) {
                lv.push(l4 + (l2 - i2) + (l3 - i2) + i1 + i2 + i3, 3, &[v.x(4, l4), v.w2(l2), v.w3(l3)]);
            }
        }
    }
    for l2 in range(1, i2) {
        for l5 in range(1, i5) {
            for l4 in range(i4 + 1, i4 + i6 + j4) {
                lv.push(l2 + l5 + (l4 - i4) + i1 + i3 + i4, 3, &[v.x(2, l2), v.x(5, l5), v.w4(l4)]);
            }
        }
    }
    for l5 in range(1, i5) {
        for l6 in range(1, i6) {
            lv.push(l5 + l6 + i1 + i2 + i3 + i4, 2, &[v.x(5, l5), v.x(6, l6)]);
        }
    }
    for l5 in range(1, i5) {
        for l2 in range(1, j2) {
            for l4 in range(1, j4) {
                lv.push(l5 + l2 + l4 + i1 + i2 + i3 + i4 + i6, 3, &[v.x(5, l5), v.y(2, l2), v.y(4, l4)]);
            }
        }
    }
    lv.into_system()
}

/// The five families of the H14 construction (no singleton slots).
pub fn h14_system(v: &FrameVars) -> SvSystem {
    let p = v.params();
    let [i1, i2, i3, i4, i5, i6] = p.i;
    let mut lv = Levels::new();
    for l1 in range(1, i1) {
        for l3 in range(1, i3) {
            lv.push(l1 + l3, 2, &[v.x(1, l1), v.x(3, l3)]);
        }
    }
    for l1 in range(1, i1) {
        for l3 in range(1, i2 + i5) {
            for l4 in range(1, i4 + i6) {
                if l3 <= i2 || l4 <= i4 {
                    lv.push(l1 + l3 + l4 + i3, 3, &[v.x(1, l1), v.w3(l3), v.w4(l4)]);
                }
            }
        }
    }
    for l3 in range(1, i3) {
        for l1 in range(1, i4 + i5) {
            for l2 in range(1, i2 + i6) {
                if l1 <= i4 || l2 <= i2 {
                    lv.push(l3 + l1 + l2 + i1, 3, &[v.x(3, l3), v.w1(l1), v.w2(l2)]);
                }
            }
        }
    }
    for l2 in range(1, i2) {
        for l4 in range(1, i4) {
            lv.push(l2 + l4 + i1 + i3, 2, &[v.x(2, l2), v.x(4, l4)]);
        }
    }
    for l5 in range(1, i5) {
        for l6 in range(1, i6) {
            lv.push(l5 + l6 + i1 + i2 + i3 + i4, 3, &[v.x(5, l5), v.x(6, l6)]);
        }
    }
    lv.into_system()
}

/// H1 splits as (X1) ∩ (X3) + (X2) ∩ (X4); one diagonal system per summand.
pub fn h1_systems(v: &FrameVars) -> [SvSystem; 2] {
    [diagonal_system(&v.x[0], &v.x[2]), diagonal_system(&v.x[1], &v.x[3])]
}
