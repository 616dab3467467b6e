//! Generators and brute-force oracles shared by the integration tests and
//! the acceptance runner. Everything here is computed without going
//! through the enumeration module.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use monoara::hypergraph::templates::{FrameParams, Template};
use monoara::{MonomialIdeal, SquarefreeMonomial};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// Random squarefree ideal with at most `max_mu` generators on at most
/// `max_vars` variables. Non-minimal generators are dropped.
pub fn random_ideal(r: &mut ChaCha8Rng, max_mu: usize, max_vars: usize) -> MonomialIdeal {
    loop {
        let n = r.gen_range(1..=max_vars);
        let mu = r.gen_range(1..=max_mu);
        let density = r.gen_range(0.2..0.6);
        let gens: Vec<SquarefreeMonomial> = (0..mu)
            .map(|_| {
                let mut m: SquarefreeMonomial = (0..n).filter(|_| r.gen_bool(density)).collect();
                if m.is_one() {
                    m.insert(r.gen_range(0..n));
                }
                m
            })
            .collect();
        if let Ok(i) = MonomialIdeal::new(names("x", n), gens) {
            return i;
        }
    }
}

/// I + J with the variables of J shifted past those of I.
pub fn disjoint_sum(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let shift = a.vars().len();
    let mut vars: Vec<String> = a.vars().iter().map(|v| format!("a_{v}")).collect();
    vars.extend(b.vars().iter().map(|v| format!("b_{v}")));
    let mut gens = a.gens().to_vec();
    gens.extend(b.gens().iter().map(|g| g.map_indices(|i| i + shift)));
    MonomialIdeal::new(vars, gens).unwrap()
}

/// Send every variable of `j` to 1 (probability `p_one`) or to a product of
/// one or two fresh variables, images pairwise coprime.
pub fn substitute(j: &MonomialIdeal, r: &mut ChaCha8Rng, p_one: f64) -> Option<MonomialIdeal> {
    let mut next = 0;
    let image: Vec<Vec<usize>> = (0..j.vars().len())
        .map(|_| {
            if r.gen_bool(p_one) {
                return Vec::new();
            }
            let k = r.gen_range(1..=2);
            next += k;
            (next - k..next).collect()
        })
        .collect();
    let gens: Vec<SquarefreeMonomial> = j
        .gens()
        .iter()
        .map(|g| g.iter().flat_map(|x| image[x].iter().copied()).collect())
        .collect();
    MonomialIdeal::new(names("z", next.max(1)), gens).ok()
}

/// Uniform parameters for a template: i_s in 1..=3 on its slots, j_u in
/// 1..=2 on its filled vertices, zero elsewhere.
pub fn random_params(t: &Template, r: &mut ChaCha8Rng) -> FrameParams {
    let i = std::array::from_fn(|s| if t.slots[s] { r.gen_range(1..=3) } else { 0 });
    let j = std::array::from_fn(|u| if t.filled[u] { r.gen_range(1..=2) } else { 0 });
    FrameParams::new(i, j)
}

pub fn shuffled<T: Clone>(items: &[T], r: &mut ChaCha8Rng) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(r);
    v
}

// ---- hypergraphs as face words: bit f set iff face f is present ----

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn map_face(f: u32, p: &[usize]) -> u32 {
    (0..p.len()).filter(|v| f >> v & 1 == 1).fold(0, |a, v| a | 1 << p[v])
}

fn map_word(w: u32, p: &[usize]) -> u32 {
    let mut out = 0;
    for f in 1..32u32 {
        if w >> f & 1 == 1 {
            out |= 1 << map_face(f, p);
        }
    }
    out
}

fn faces_of(w: u32) -> impl Iterator<Item = u32> {
    (1..32u32).filter(move |f| w >> f & 1 == 1)
}

pub fn word_separable(mu: usize, w: u32) -> bool {
    (0..mu).all(|i| (0..mu).all(|j| i == j || faces_of(w).any(|f| f >> i & 1 == 1 && f >> j & 1 == 0)))
}

pub fn word_connected(mu: usize, w: u32) -> bool {
    let full = (1u32 << mu) - 1;
    let mut seen = 1u32;
    loop {
        let grown = faces_of(w).filter(|f| f & seen != 0).fold(seen, |a, f| a | f);
        if grown == seen {
            return seen == full;
        }
        seen = grown;
    }
}

/// Canonical word of every connected separable hypergraph on `mu`
/// vertices, found by scanning all labeled face sets.
pub fn brute_classes(mu: usize) -> BTreeSet<u32> {
    let ps = perms(mu);
    let faces = (1u32 << mu) - 1;
    let mut out = BTreeSet::new();
    for bits in 0u32..(1 << faces) {
        let w = bits << 1;
        if word_separable(mu, w) && word_connected(mu, w) {
            out.insert(ps.iter().map(|p| map_word(w, p)).min().unwrap());
        }
    }
    out
}

pub fn canonical(mu: usize, w: u32) -> u32 {
    perms(mu).iter().map(|p| map_word(w, p)).min().unwrap()
}

/// Members not contained, after some relabeling, in a member with more faces.
pub fn brute_maximal(mu: usize, members: &BTreeSet<u32>) -> BTreeSet<u32> {
    let ps = perms(mu);
    members
        .iter()
        .copied()
        .filter(|&c| {
            !members.iter().any(|&g| {
                g.count_ones() > c.count_ones() && ps.iter().any(|p| map_word(c, p) & !g == 0)
            })
        })
        .collect()
}

/// Number of isomorphism classes of connected separable hypergraphs on `mu`
/// vertices by Burnside over the symmetric group. A face set qualifies iff
/// it meets every separator family {faces ∋ i, ∌ j} and every cut family
/// {faces meeting both S and its complement}.
pub fn burnside_count(mu: usize) -> u64 {
    burnside_count_with(mu, true)
}

/// As `burnside_count`, optionally without the cut families (separable but
/// possibly disconnected).
pub fn burnside_count_with(mu: usize, connected: bool) -> u64 {
    let full = (1u32 << mu) - 1;
    let mut families: Vec<u32> = Vec::new();
    for i in 0..mu {
        for j in 0..mu {
            if i != j {
                families.push((1..=full).filter(|&f| f >> i & 1 == 1 && f >> j & 1 == 0).fold(0, |a, f| a | 1 << f));
            }
        }
    }
    for s in 1..full {
        if connected && s & 1 == 1 {
            families.push((1..=full).filter(|&f| f & s != 0 && f & !s != 0).fold(0, |a, f| a | 1 << f));
        }
    }
    let all: u64 = (1u64 << families.len()) - 1;
    let hits = |f: u32| -> u64 {
        families.iter().enumerate().filter(|(_, m)| *m >> f & 1 == 1).fold(0, |a, (k, _)| a | 1 << k)
    };
    let mut by_type: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut total = 0u64;
    for p in perms(mu) {
        let mut cycle_type = cycle_type(&p);
        cycle_type.sort_unstable();
        if let Some(c) = by_type.get(&cycle_type) {
            total += c;
            continue;
        }
        let mut orbits: Vec<u64> = Vec::new();
        let mut done = 0u32;
        for f in 1..=full {
            if done >> f & 1 == 1 {
                continue;
            }
            let mut h = 0u64;
            let mut g = f;
            while done >> g & 1 == 0 {
                done |= 1 << g;
                h |= hits(g);
                g = map_face(g, &p);
            }
            orbits.push(h);
        }
        let fixed = if orbits.len() > 24 { split_count(&orbits, all) } else { dfs_count(&orbits, 0, all) };
        by_type.insert(cycle_type, fixed);
        total += fixed;
    }
    let order = perms(mu).len() as u64;
    assert_eq!(total % order, 0, "Burnside sum is not divisible by the group order");
    total / order
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = p[v];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Subsets of `items` whose union of hit masks is `all`.
fn dfs_count(items: &[u64], acc: u64, all: u64) -> u64 {
    match items.split_first() {
        None => u64::from(acc == all),
        Some((&h, rest)) => dfs_count(rest, acc | h, all) + dfs_count(rest, acc, all),
    }
}

/// Same count, meeting in the middle.
fn split_count(items: &[u64], all: u64) -> u64 {
    let (a, b) = items.split_at(items.len() / 2);
    let unions = |part: &[u64]| {
        let mut m: HashMap<u64, u64> = HashMap::new();
        let mut u = vec![0u64; 1 << part.len()];
        for s in 1..u.len() {
            let low = s.trailing_zeros() as usize;
            u[s] = u[s & (s - 1)] | part[low];
        }
        for x in u {
            *m.entry(x).or_insert(0) += 1;
        }
        m.into_iter().collect::<Vec<_>>()
    };
    let (ua, ub) = (unions(a), unions(b));
    let mut total = 0;
    for &(x, cx) in &ua {
        for &(y, cy) in &ub {
            if x | y == all {
                total += cx * cy;
            }
        }
    }
    total
}
