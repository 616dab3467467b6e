//! Squarefree monomial ideals and their combinatorial invariants.

mod io;
mod monomial;
pub mod primes;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use io::IdealJson;
pub use monomial::SquarefreeMonomial;

use crate::error::{Error, Result};

/// Keep only the divisibility-minimal monomials, dropping duplicates.
/// Input order is preserved among the survivors.
pub fn minimalize(gens: &[SquarefreeMonomial]) -> Result<Vec<SquarefreeMonomial>> {
    if gens.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut out: Vec<SquarefreeMonomial> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let dominated = gens.iter().enumerate().any(|(j, h)| {
            j != i && h.divides(g) && (h != g || j < i)
        });
        if !dominated {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// A squarefree monomial ideal given by its minimal generators over a
/// named ambient set of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<SquarefreeMonomial>,
}

/// Minimal primes, each given by its variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDecomposition {
    pub primes: Vec<SquarefreeMonomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub mu: usize,
    pub indeg: usize,
    pub height: usize,
    pub arithdeg: usize,
    pub connected: bool,
}

impl MonomialIdeal {
    /// Build an ideal from arbitrary generators; non-minimal ones are dropped.
    pub fn new(vars: Vec<String>, gens: Vec<SquarefreeMonomial>) -> Result<Self> {
        let gens = minimalize(&gens)?;
        if gens.iter().any(|g| g.is_one()) {
            return Err(Error::UnitIdeal);
        }
        if let Some(max) = gens.iter().filter_map(|g| g.max_index()).max() {
            if max >= vars.len() {
                return Err(Error::Precondition(format!(
                    "generator uses variable index {max} outside the {} ambient variables",
                    vars.len()
                )));
            }
        }
        let distinct: BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != vars.len() {
            return Err(Error::Precondition("duplicate variable names".into()));
        }
        Ok(Self { vars, gens })
    }

    /// Build from generators written as lists of variable names. Variables
    /// are numbered in order of first appearance.
    pub fn from_names<S: AsRef<str>>(gens: &[Vec<S>]) -> Result<Self> {
        let mut vars: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let mut m = SquarefreeMonomial::one();
            for name in g {
                let name = name.as_ref();
                let i = *index.entry(name.to_string()).or_insert_with(|| {
                    vars.push(name.to_string());
                    vars.len() - 1
                });
                m.insert(i);
            }
            out.push(m);
        }
        Self::new(vars, out)
    }

    /// Shorthand for tests and examples: generators separated by commas,
    /// variables by `*`, e.g. `"x1*x2, x2*x3"`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let gens: Vec<Vec<&str>> = s
            .split(',')
            .map(|g| g.split('*').map(str::trim).filter(|v| !v.is_empty()).collect())
            .collect();
        Self::from_names(&gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn gens(&self) -> &[SquarefreeMonomial] {
        &self.gens
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    /// X(I): variables appearing in some generator.
    pub fn support(&self) -> SquarefreeMonomial {
        self.gens
            .iter()
            .fold(SquarefreeMonomial::one(), |acc, g| acc.lcm(g))
    }

    /// The same ideal over exactly its support variables, I ∩ K[X(I)].
    pub fn restrict_to_support(&self) -> Self {
        let support: Vec<usize> = self.support().iter().collect();
        let mut remap = vec![usize::MAX; self.vars.len()];
        for (new, &old) in support.iter().enumerate() {
            remap[old] = new;
        }
        Self {
            vars: support.iter().map(|&i| self.vars[i].clone()).collect(),
            gens: self.gens.iter().map(|g| g.map_indices(|i| remap[i])).collect(),
        }
    }

    /// Replace the ambient variable table, remapping generators by name.
    /// Every variable of X(I) must be present in `vars`.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let index: HashMap<&str, usize> =
            vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut m = SquarefreeMonomial::one();
            for i in g.iter() {
                let j = index.get(self.vars[i].as_str()).ok_or_else(|| {
                    Error::Precondition(format!("variable {} missing", self.vars[i]))
                })?;
                m.insert(*j);
            }
            gens.push(m);
        }
        Self::new(vars.to_vec(), gens)
    }

    /// Ideal equality by variable names, ignoring generator order and
    /// unused ambient variables.
    pub fn same_ideal(&self, other: &Self) -> bool {
        self.generator_names() == other.generator_names()
    }

    fn generator_names(&self) -> BTreeSet<BTreeSet<&str>> {
        self.gens
            .iter()
            .map(|g| g.iter().map(|i| self.vars[i].as_str()).collect())
            .collect()
    }

    pub fn monomial_string(&self, m: &SquarefreeMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.iter()
            .map(|i| self.vars[i].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn indeg(&self) -> usize {
        self.gens.iter().map(|g| g.degree()).min().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        primes::min_transversal_size(&self.gens)
    }

    pub fn minimal_primes(&self) -> PrimeDecomposition {
        PrimeDecomposition {
            primes: primes::minimal_transversals(&self.gens),
        }
    }

    pub fn arithdeg(&self) -> usize {
        self.minimal_primes().primes.len()
    }

    /// Connectivity of the graph on generators joined when they share a variable.
    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().all(|&c| c == 0)
    }

    fn component_labels(&self) -> Vec<usize> {
        let n = self.gens.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if label[j] == usize::MAX && !self.gens[i].is_coprime(&self.gens[j]) {
                        label[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            mu: self.mu(),
            indeg: self.indeg(),
            height: self.height(),
            arithdeg: self.arithdeg(),
            connected: self.is_connected(),
        }
    }

    /// Split the generators into connected components of the gcd graph.
    /// Each component keeps the full ambient variable table.
    pub fn components(&self) -> Vec<MonomialIdeal> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        (0..count)
            .map(|c| MonomialIdeal {
                vars: self.vars.clone(),
                gens: self
                    .gens
                    .iter()
                    .zip(&labels)
                    .filter(|(_, &l)| l == c)
                    .map(|(g, _)| g.clone())
                    .collect(),
            })
            .collect()
    }

    /// Alexander dual over the ambient variables: generated by x^P over the
    /// minimal primes P.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal> {
        let h = self.height();
        if h < 2 {
            return Err(Error::DualUndefined(h));
        }
        Ok(MonomialIdeal {
            vars: self.vars.clone(),
            gens: self.minimal_primes().primes,
        })
    }

    /// Intersection of two ideals over the same variable table.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let other = other.with_vars(&self.vars)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Self::new(self.vars.clone(), gens)
    }

    /// Intersection of primes given as variable sets.
    pub fn from_primes(vars: Vec<String>, primes: &[SquarefreeMonomial]) -> Result<Self> {
        let gens = primes::minimal_transversals(primes);
        Self::new(vars, gens)
    }

    /// Greatest common divisor of all generators.
    pub fn common_factor(&self) -> SquarefreeMonomial {
        let mut it = self.gens.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, g| acc.gcd(g))
    }

    /// Divide every generator by the monomial `m` (which must divide all).
    pub fn divide_by(&self, m: &SquarefreeMonomial) -> Result<Self> {
        if !self.gens.iter().all(|g| m.divides(g)) {
            return Err(Error::Precondition("monomial does not divide every generator".into()));
        }
        let gens: Vec<_> = self.gens.iter().map(|g| g.without(m)).collect();
        Self::new(self.vars.clone(), gens)
    }
}

impl PrimeDecomposition {
    /// Re-expand the intersection of the primes into minimal generators.
    pub fn intersection(&self) -> Vec<SquarefreeMonomial> {
        let mut gens = primes::minimal_transversals(&self.primes);
        gens.sort();
        gens
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.monomial_string(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}
