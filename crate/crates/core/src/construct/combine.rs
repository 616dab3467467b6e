//! Combining radical generators of variable-disjoint ideals, and the cone
//! reduction for arithdeg-4 ideals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::hypergraph_of;
use crate::ideal::{MonomialIdeal, SquarefreeMonomial};
use crate::verify::Polynomial;

fn variables(list: &[Polynomial]) -> SquarefreeMonomial {
    list.iter().fold(SquarefreeMonomial::one(), |acc, p| acc.lcm(&p.variables()))
}

fn check_disjoint(f: &[Polynomial], g: &[Polynomial]) -> Result<()> {
    if variables(f).is_coprime(&variables(g)) {
        Ok(())
    } else {
        Err(Error::NotDisjoint)
    }
}

/// Generators for I1 ∩ I2 from generators of I1 and I2:
/// h_ℓ = Σ_j f_{ℓ−j} g_j, ℓ = 0..s1+s2.
pub fn combine_intersection(f: &[Polynomial], g: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_disjoint(f, g)?;
    if f.is_empty() || g.is_empty() {
        return Err(Error::Precondition("both generator lists must be non-empty".into()));
    }
    let mut h = vec![Polynomial::zero(); f.len() + g.len() - 1];
    for (a, fa) in f.iter().enumerate() {
        for (b, gb) in g.iter().enumerate() {
            h[a + b].add_assign_ref(&(fa * gb));
        }
    }
    Ok(h)
}

/// Generators for I1 + I2: the concatenation.
pub fn combine_sum(f: &[Polynomial], g: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_disjoint(f, g)?;
    Ok(f.iter().chain(g).cloned().collect())
}

/// Degree-one generators split off as their own radical generators.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub linear: Vec<usize>,
    pub rest: Option<MonomialIdeal>,
}

pub fn strip_indeg_one(ideal: &MonomialIdeal) -> Result<Stripped> {
    let (linear, rest): (Vec<&SquarefreeMonomial>, Vec<&SquarefreeMonomial>) =
        ideal.gens().iter().partition(|g| g.degree() == 1);
    let linear: Vec<usize> = linear.iter().flat_map(|g| g.iter()).collect();
    let rest = if rest.is_empty() {
        None
    } else {
        Some(MonomialIdeal::new(ideal.vars().to_vec(), rest.into_iter().cloned().collect())?)
    };
    Ok(Stripped { linear, rest })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeStep {
    pub variable: String,
    /// The three primes (1-based, in the order of the current decomposition)
    /// the variable was removed from.
    pub primes: Vec<usize>,
}

/// Remove defining variables of 2-faces of H(I*) one at a time until
/// dim H(I*) ≤ 1. Returns the reduced ideal and the removals made.
pub fn cone_reduce(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, Vec<ConeStep>)> {
    if ideal.arithdeg() > 4 || ideal.indeg() < 2 || ideal.height() < 2 {
        return Err(Error::Precondition("cone reduction needs arithdeg <= 4, indeg >= 2, height >= 2".into()));
    }
    let vars = ideal.vars().to_vec();
    let mut primes = ideal.minimal_primes().primes;
    let mut log = Vec::new();
    loop {
        // A removal can make one prime contain another; only minimal primes
        // take part in the next round.
        let dual = MonomialIdeal::new(vars.clone(), primes.clone())?;
        primes = dual.gens().to_vec();
        let (h, map) = hypergraph_of(&dual)?;
        let Some(&face) = h.faces().iter().find(|f| f.count_ones() == 3) else {
            return Ok((MonomialIdeal::from_primes(vars, &primes)?, log));
        };
        let x = map.by_face[&face][0];
        log.push(ConeStep {
            variable: vars[x].clone(),
            primes: (0..primes.len()).filter(|k| face >> k & 1 == 1).map(|k| k + 1).collect(),
        });
        for p in &mut primes {
            p.remove(x);
        }
    }
}
