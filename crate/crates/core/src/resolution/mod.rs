//! Multigraded Betti numbers, projective dimension and regularity.

mod lattice;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use lattice::{reduced_homology, LcmLattice};
pub use linalg::{sparse_rank, IntegerMatrix};

use crate::error::{Error, Result};
use crate::hypergraph::{mask_vertices, FrameParams, Hypergraph, Template};
use crate::ideal::{MonomialIdeal, SquarefreeMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub const F2: Field = Field::Fp(2);
    pub const F3: Field = Field::Fp(3);

    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Fp(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) if *p <= 3 => write!(f, "F{p}"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown field `{s}` (use Q, F2, F3 or Fp:<p>)"));
        match s {
            "Q" | "QQ" => Ok(Field::Q),
            "F2" => Ok(Field::F2),
            "F3" => Ok(Field::F3),
            _ => {
                let digits = s.strip_prefix("Fp:").or_else(|| s.strip_prefix('F')).ok_or_else(bad)?;
                let p: u64 = digits.parse().map_err(|_| bad())?;
                Field::prime(p)
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Multigraded Betti numbers β_{i,α}(S/I), including β_{0,0} = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    pub nvars: usize,
    pub entries: BTreeMap<(usize, SquarefreeMonomial), usize>,
}

#[derive(Serialize)]
struct BettiEntryJson {
    i: usize,
    deg: Vec<u8>,
    beta: usize,
}

#[derive(Serialize)]
pub struct BettiJson {
    field: Field,
    entries: Vec<BettiEntryJson>,
    pd: usize,
    reg: usize,
}

impl BettiTable {
    /// Projective dimension of S/I.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// reg S/I = max (|α| − i).
    pub fn reg_quotient(&self) -> usize {
        self.entries
            .keys()
            .map(|(i, a)| a.degree() - i)
            .max()
            .unwrap_or(0)
    }

    /// reg I = reg S/I + 1.
    pub fn reg_ideal(&self) -> usize {
        self.reg_quotient() + 1
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, b)| b).sum()
    }

    /// β_{i,j}: sum over multidegrees of total degree j.
    pub fn graded(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for ((i, a), b) in &self.entries {
            *out.entry((*i, a.degree())).or_insert(0) += b;
        }
        out
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            field: self.field,
            entries: self
                .entries
                .iter()
                .map(|((i, a), b)| BettiEntryJson {
                    i: *i,
                    deg: (0..self.nvars).map(|v| a.contains(v) as u8).collect(),
                    beta: *b,
                })
                .collect(),
            pd: self.pd(),
            reg: self.reg_ideal(),
        }
    }
}

/// Betti numbers of S/I via homology of open intervals of the lcm lattice.
pub fn betti_table(ideal: &MonomialIdeal, field: Field) -> BettiTable {
    let lattice = LcmLattice::new(ideal.gens());
    let mut entries = BTreeMap::new();
    entries.insert((0, SquarefreeMonomial::one()), 1);
    for (k, m) in lattice.elements().iter().enumerate() {
        for (d1, &h) in lattice.interval_homology(k, field).iter().enumerate() {
            if h > 0 {
                entries.insert((d1 + 1, m.clone()), h);
            }
        }
    }
    BettiTable { field, nvars: ideal.vars().len(), entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Direct,
    Dual,
}

/// pd S/I, either from the Betti table of I or as reg I*.
pub fn pd(ideal: &MonomialIdeal, field: Field, strategy: Strategy) -> Result<usize> {
    match strategy {
        Strategy::Direct => Ok(betti_table(ideal, field).pd()),
        Strategy::Dual => Ok(reg(&ideal.alexander_dual()?, field)),
    }
}

/// reg I.
pub fn reg(ideal: &MonomialIdeal, field: Field) -> usize {
    betti_table(ideal, field).reg_ideal()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PdCriterion {
    EqualsMu,
    EqualsMuMinus1,
    Neither,
}

/// Combinatorial test for pd S/I ∈ {μ, μ−1} read off H(I).
pub fn pd_criteria(h: &Hypergraph) -> PdCriterion {
    let b = h.b_mask();
    let w = h.w_mask();
    if w == 0 {
        return PdCriterion::EqualsMu;
    }
    let edges = h.level(1);
    let has_edge = |x: usize, y: usize| edges.contains(&(1 << x | 1 << y));
    // (i): the edges inside W contain a spanning complete bipartite graph,
    // i.e. the complement graph on W is disconnected.
    let wv: Vec<usize> = mask_vertices(w).collect();
    if wv.len() >= 2 {
        let mut reached = 1u32 << wv[0];
        loop {
            let mut next = reached;
            for &x in &wv {
                if reached >> x & 1 == 1 {
                    for &y in &wv {
                        if x != y && !has_edge(x, y) {
                            next |= 1 << y;
                        }
                    }
                }
            }
            if next == reached {
                break;
            }
            reached = next;
        }
        if reached != w {
            return PdCriterion::EqualsMuMinus1;
        }
    }
    // (ii): some filled vertex is joined by an edge to all of W.
    if mask_vertices(b).any(|i| wv.iter().all(|&j| has_edge(i, j))) {
        return PdCriterion::EqualsMuMinus1;
    }
    PdCriterion::Neither
}

/// pd over ℚ, 𝔽₂ and 𝔽₃, required to agree.
pub fn char_independent_pd(ideal: &MonomialIdeal) -> Result<usize> {
    let values: Vec<(String, usize)> = [Field::Q, Field::F2, Field::F3]
        .iter()
        .map(|&f| (f.to_string(), betti_table(ideal, f).pd()))
        .collect();
    if values.iter().all(|(_, v)| *v == values[0].1) {
        Ok(values[0].1)
    } else {
        Err(Error::CharDependence(values))
    }
}

/// Largest admissible subset for the Lyubeznik resolution with the given
/// generator order. `order[k]` is the index in G(I) of the k-th generator.
pub fn lyubeznik_length(ideal: &MonomialIdeal, order: &[usize]) -> Result<usize> {
    let mu = ideal.mu();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..mu).collect::<Vec<_>>() {
        return Err(Error::Precondition("order must be a permutation of the generators".into()));
    }
    if mu > 24 {
        return Err(Error::Precondition("at most 24 generators supported".into()));
    }
    let gens: Vec<&SquarefreeMonomial> = order.iter().map(|&k| &ideal.gens()[k]).collect();
    let mut best = 0;
    for t in 1u32..(1 << mu) {
        let size = t.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = mask_vertices(t).collect();
        let mut suffix = SquarefreeMonomial::one();
        let mut ok = true;
        for &it in members.iter().rev() {
            suffix = suffix.lcm(gens[it]);
            if (0..it).any(|q| gens[q].divides(&suffix)) {
                ok = false;
                break;
            }
        }
        if ok {
            best = size;
        }
    }
    Ok(best)
}

/// Which closed form applies to a template.
fn formula_case(template: usize) -> u8 {
    match template {
        11 | 17 | 20 => 1,
        22 => 2,
        4 | 5 | 12 | 13 | 24 => 3,
        _ => 4,
    }
}

/// pd S/I for I = P1 ∩ … ∩ P4 laid out on a template.
pub fn pd_formula_arithdeg4(template: &Template, params: &FrameParams) -> Result<usize> {
    params.check(template)?;
    let n = params.n();
    let [j2, j3, j4] = params.j;
    let v = match formula_case(template.id) {
        1 => (n - j2 - 2).max(n - j3 - 2).max(n - j4 - 2),
        2 => (n - j2 - 2).max(n - j3 - 2),
        3 => (n - j2 - 2).max(n - j4 - 2),
        _ => n - 2,
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(s: &str) -> MonomialIdeal {
        MonomialIdeal::parse_list(s).unwrap()
    }

    fn graded(t: &BettiTable) -> Vec<((usize, usize), usize)> {
        t.graded().into_iter().collect()
    }

    #[test]
    fn triangle_betti() {
        let t = betti_table(&ideal("x1*x2, x1*x3, x2*x3"), Field::Q);
        assert_eq!(graded(&t), vec![((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        assert_eq!(t.pd(), 2);
        assert_eq!(t.reg_ideal(), 2);
    }

    #[test]
    fn koszul_cases() {
        let t = betti_table(&ideal("x1*x2"), Field::Q);
        assert_eq!(graded(&t), vec![((0, 0), 1), ((1, 2), 1)]);
        let t = betti_table(&ideal("x1*x2, x3*x4"), Field::Q);
        assert_eq!(graded(&t), vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
    }

    #[test]
    fn path_pd_both_strategies() {
        let p = ideal("x1*x2, x2*x3, x3*x4");
        assert_eq!(pd(&p, Field::Q, Strategy::Direct).unwrap(), 2);
        assert_eq!(pd(&p, Field::Q, Strategy::Dual).unwrap(), 2);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Q);
        assert_eq!("F2".parse::<Field>().unwrap(), Field::Fp(2));
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Fp(7));
        assert!(matches!("Fp:9".parse::<Field>(), Err(Error::NotPrime(9))));
        assert_eq!(Field::Fp(7).to_string(), "Fp:7");
    }

    #[test]
    fn criteria_examples() {
        let h = |s: &str| crate::hypergraph::hypergraph_of(&ideal(s)).unwrap().0;
        assert_eq!(pd_criteria(&h("x1*x2, x1*x3")), PdCriterion::EqualsMu);
        assert_eq!(pd_criteria(&h("x1*x2, x2*x3, x3*x4")), PdCriterion::EqualsMuMinus1);
        assert_eq!(pd_criteria(&h("x1*x2, x2*x3, x1*x3")), PdCriterion::EqualsMuMinus1);
    }

    #[test]
    fn lyubeznik_examples() {
        let p = ideal("a*b, b*c, c*d");
        assert_eq!(lyubeznik_length(&p, &[0, 1, 2]).unwrap(), 3);
        assert_eq!(lyubeznik_length(&ideal("a*b"), &[0]).unwrap(), 1);
        assert!(lyubeznik_length(&p, &[0, 0, 1]).is_err());
    }

    #[test]
    fn formula_examples() {
        let t17 = Template::get(17).unwrap();
        assert_eq!(pd_formula_arithdeg4(t17, &FrameParams::new([1; 6], [1; 3])).unwrap(), 6);
        let t14 = Template::get(14).unwrap();
        assert_eq!(pd_formula_arithdeg4(t14, &FrameParams::new([1; 6], [0; 3])).unwrap(), 4);
        assert!(pd_formula_arithdeg4(t14, &FrameParams::new([1; 6], [1, 0, 0])).is_err());
    }

    #[test]
    fn fixed_ideal_pd_over_fields() {
        let i = ideal("x1*x2, x1*x3, x2*x3");
        assert_eq!(char_independent_pd(&i).unwrap(), 2);
        assert_eq!(char_independent_pd(&ideal("x1*x2")).unwrap(), 1);
    }
}
