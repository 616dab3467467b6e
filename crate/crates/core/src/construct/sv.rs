//! Schmitt–Vogel systems: ordered groups P_0..P_r of monomials whose group
//! sums generate the ideal up to radical.

use serde::Serialize;

use crate::ideal::{minimalize, MonomialIdeal, SquarefreeMonomial};
use crate::verify::Polynomial;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SvSystem {
    pub groups: Vec<Vec<SquarefreeMonomial>>,
}

/// Why an SV3 pair has no witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sv3Failure {
    pub level: usize,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SvReport {
    pub sv1: bool,
    pub sv2: bool,
    pub sv3: bool,
    pub groups: usize,
    pub failure: Option<Sv3Failure>,
}

impl SvReport {
    pub fn passed(&self) -> bool {
        self.sv1 && self.sv2 && self.sv3
    }
}

impl SvSystem {
    pub fn new(groups: Vec<Vec<SquarefreeMonomial>>) -> Self {
        let mut s = Self { groups };
        for g in &mut s.groups {
            g.sort();
            g.dedup();
        }
        s
    }

    /// Drop empty groups, keeping the order of the rest.
    pub fn compact(mut self) -> Self {
        self.groups.retain(|g| !g.is_empty());
        self
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn nonempty_groups(&self) -> usize {
        self.groups.iter().filter(|g| !g.is_empty()).count()
    }

    pub fn members(&self) -> impl Iterator<Item = &SquarefreeMonomial> {
        self.groups.iter().flatten()
    }

    /// Group sums g_ℓ over the nonempty groups.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.groups
            .iter()
            .filter(|g| !g.is_empty())
            .map(|g| Polynomial::sum(g.iter().map(Polynomial::from_squarefree).collect::<Vec<_>>().iter()))
            .collect()
    }
}

/// SV1: the members generate I. SV2: the first group is a singleton.
/// SV3: every pair in a later group has a witness a' in an earlier group
/// with a' | a·a''.
pub fn sv_check(sys: &SvSystem, ideal: &MonomialIdeal) -> SvReport {
    let members: Vec<SquarefreeMonomial> = sys.members().cloned().collect();
    let sv1 = match minimalize(&members) {
        Ok(mut g) => {
            let mut want = ideal.gens().to_vec();
            g.sort();
            want.sort();
            g == want
        }
        Err(_) => false,
    };
    let sv2 = sys.groups.first().is_some_and(|g| g.len() == 1);
    let mut failure = None;
    'outer: for (l, group) in sys.groups.iter().enumerate().skip(1) {
        for (x, a) in group.iter().enumerate() {
            for b in &group[x + 1..] {
                let ab = a.lcm(b);
                let witnessed = sys.groups[..l].iter().flatten().any(|w| w.divides(&ab));
                if !witnessed {
                    failure = Some(Sv3Failure {
                        level: l,
                        a: ideal.monomial_string(a),
                        b: ideal.monomial_string(b),
                    });
                    break 'outer;
                }
            }
        }
    }
    SvReport { sv1, sv2, sv3: failure.is_none(), groups: sys.groups.len(), failure }
}

/// Group sums, after confirming the system.
pub fn sv_generators(sys: &SvSystem, ideal: &MonomialIdeal) -> crate::Result<Vec<Polynomial>> {
    let report = sv_check(sys, ideal);
    if !report.passed() {
        return Err(crate::Error::SvCheckFailed(format!("{report:?}")));
    }
    Ok(sys.generators())
}

/// For (A) ∩ (B) with disjoint variable lists: P_ℓ = {a_s b_t : s + t = ℓ}.
pub fn diagonal_system(a: &[usize], b: &[usize]) -> SvSystem {
    let mut groups = vec![Vec::new(); (a.len() + b.len()).saturating_sub(1)];
    for (s, &x) in a.iter().enumerate() {
        for (t, &y) in b.iter().enumerate() {
            groups[s + t].push(SquarefreeMonomial::from_indices([x, y]));
        }
    }
    SvSystem::new(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_ideal() -> MonomialIdeal {
        MonomialIdeal::parse_list("x1*y1, x1*y2, x2*y1, x2*y2").unwrap()
    }

    #[test]
    fn singleton_system() {
        let i = MonomialIdeal::parse_list("a*b").unwrap();
        let sys = SvSystem::new(vec![vec![i.gens()[0].clone()]]);
        assert!(sv_check(&sys, &i).passed());
        assert_eq!(sys.generators().len(), 1);
    }

    #[test]
    fn diagonal_product_system() {
        let i = product_ideal();
        // Variables in order of appearance: x1, y1, y2, x2.
        let sys = diagonal_system(&[0, 3], &[1, 2]);
        assert_eq!(sys.groups.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(sv_check(&sys, &i).passed());
        let gens = sv_generators(&sys, &i).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[1].len(), 2);
    }

    #[test]
    fn swapping_later_groups_keeps_sv3() {
        // The only two-element group multiplies to x1x2y1y2, which P0 divides.
        let i = product_ideal();
        let mut sys = diagonal_system(&[0, 3], &[1, 2]);
        sys.groups.swap(1, 2);
        assert!(sv_check(&sys, &i).passed());
    }

    #[test]
    fn merged_groups_fail_sv3() {
        let i = product_ideal();
        let mut sys = diagonal_system(&[0, 3], &[1, 2]);
        let last = sys.groups.pop().unwrap();
        sys.groups[1].extend(last);
        let r = sv_check(&sys, &i);
        assert!(r.sv1 && r.sv2 && !r.sv3);
        assert_eq!(r.failure.unwrap().level, 1);
    }
}
