//! A small Buchberger engine over ℚ (grevlex) used as an independent radical
//! membership oracle via the Rabinowitsch trick.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMembership {
    Yes,
    No,
    Timeout,
}

type Exps = Vec<u16>;

#[derive(Clone, Debug)]
struct DensePoly {
    /// Terms sorted by decreasing grevlex order.
    terms: Vec<(Exps, BigRational)>,
}

fn grevlex(a: &Exps, b: &Exps) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for k in (0..a.len()).rev() {
            if a[k] != b[k] {
                return b[k].cmp(&a[k]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl DensePoly {
    fn from_poly(p: &Polynomial, n: usize) -> Self {
        let mut terms: Vec<(Exps, BigRational)> = p
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for &(v, k) in m.exponents() {
                    e[v] = k as u16;
                }
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        Self { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Exps {
        &self.terms[0].0
    }

    fn is_constant(&self) -> bool {
        !self.is_zero() && self.lead().iter().all(|&e| e == 0)
    }

    fn monic(mut self) -> Self {
        if let Some(c) = self.terms.first().map(|t| t.1.clone()) {
            for t in &mut self.terms {
                t.1 = &t.1 / &c;
            }
        }
        self
    }

    /// self − c·x^shift·other
    fn sub_scaled(&self, other: &Self, shift: &Exps, c: &BigRational) -> Self {
        let shifted: Vec<(Exps, BigRational)> = other
            .terms
            .iter()
            .map(|(e, a)| (e.iter().zip(shift).map(|(x, y)| x + y).collect(), -(a * c)))
            .collect();
        let (a, b) = (&self.terms, &shifted);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => grevlex(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    fn s_poly(&self, other: &Self) -> Self {
        let l = lcm(self.lead(), other.lead());
        let sa: Exps = l.iter().zip(self.lead()).map(|(x, y)| x - y).collect();
        let sb: Exps = l.iter().zip(other.lead()).map(|(x, y)| x - y).collect();
        let zero = Self { terms: Vec::new() };
        let left = zero.sub_scaled(self, &sa, &(-BigRational::one() / &self.terms[0].1));
        left.sub_scaled(other, &sb, &(BigRational::one() / &other.terms[0].1))
    }
}

/// Full reduction of `p` modulo `basis`; None when the deadline passes.
fn normal_form(p: DensePoly, basis: &[DensePoly], deadline: Instant) -> Option<DensePoly> {
    let mut rest = p;
    let mut out: Vec<(Exps, BigRational)> = Vec::new();
    while !rest.is_zero() {
        if Instant::now() >= deadline {
            return None;
        }
        let (lead, c) = rest.terms[0].clone();
        match basis.iter().find(|g| divides(g.lead(), &lead)) {
            Some(g) => {
                let shift: Exps = lead.iter().zip(g.lead()).map(|(x, y)| x - y).collect();
                rest = rest.sub_scaled(g, &shift, &(&c / &g.terms[0].1));
            }
            None => {
                out.push((lead, c));
                rest.terms.remove(0);
            }
        }
    }
    Some(DensePoly { terms: out })
}

/// Is `m` in √(J)? Decided by whether J + (t·m − 1) is the unit ideal.
pub fn groebner_radical_member(m: &Polynomial, generators: &[Polynomial], budget: Duration) -> RadicalMembership {
    let deadline = Instant::now() + budget;
    let n_vars = generators
        .iter()
        .chain(std::iter::once(m))
        .filter_map(|p| p.variables().max_index())
        .max()
        .map_or(0, |v| v + 1);
    let t = n_vars;
    let n = n_vars + 1;
    let mut inputs: Vec<DensePoly> = generators.iter().map(|g| DensePoly::from_poly(g, n)).collect();
    let tm = m * &Polynomial::monomial(Monomial::variable(t));
    inputs.push(DensePoly::from_poly(&(&tm - &Polynomial::one()), n));

    let mut basis: Vec<DensePoly> = Vec::new();
    for p in inputs {
        let Some(r) = normal_form(p, &basis, deadline) else {
            return RadicalMembership::Timeout;
        };
        if r.is_constant() {
            return RadicalMembership::Yes;
        }
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        if Instant::now() >= deadline {
            return RadicalMembership::Timeout;
        }
        let (li, lj) = (basis[i].lead(), basis[j].lead());
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lead(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = basis[i].s_poly(&basis[j]);
        let Some(r) = normal_form(s, &basis, deadline) else {
            return RadicalMembership::Timeout;
        };
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return RadicalMembership::Yes;
        }
        let k = basis.len();
        basis.push(r.monic());
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    RadicalMembership::No
}
